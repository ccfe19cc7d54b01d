#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gfs/errors.hpp"

namespace gfs {

using cplx = std::complex<double>;

// Square spatial grid of feature cells.
struct Grid2D {
    int height = 0;
    int width = 0;

    Grid2D() = default;
    explicit Grid2D(int side) : Grid2D(side, side) {}
    Grid2D(int h, int w) : height(h), width(w) {
        if (h != w) throw ShapeError("Grid2D: grid must be square");
        if (h < 2) throw ShapeError("Grid2D: side must be >= 2");
    }
    int side() const { return height; }
    int cells() const { return height * width; }
    bool operator==(const Grid2D&) const = default;
};

// N x N real matrix, row major.
class RealMatrix {
public:
    RealMatrix() = default;
    explicit RealMatrix(int side, double fill = 0.0)
        : side_(side), data_(static_cast<std::size_t>(side) * side, fill) {}

    int side() const { return side_; }
    std::size_t size() const { return data_.size(); }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * side_ + j]; }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * side_ + j]; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    int side_ = 0;
    std::vector<double> data_;
};

// N x N x C real tensor. Storage is channel-slowest: element (i, j, k) lives at
// flat index ((k*N + i)*N + j), so each channel is a contiguous row-major N x N
// slice. This matches the on-disk FTEN layout.
class RealTensor3 {
public:
    RealTensor3() = default;
    RealTensor3(int side, int channels, double fill = 0.0)
        : side_(side), channels_(channels),
          data_(static_cast<std::size_t>(side) * side * channels, fill) {
        if (side < 2 || channels < 1) throw ShapeError("RealTensor3: side >= 2 and channels >= 1 required");
    }

    int side() const { return side_; }
    int channels() const { return channels_; }
    Grid2D grid() const { return Grid2D(side_); }
    std::size_t size() const { return data_.size(); }
    bool same_shape(const RealTensor3& o) const { return side_ == o.side_ && channels_ == o.channels_; }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * side_ + i) * side_ + j;
    }
    double at(int i, int j, int k) const { return data_[index(i, j, k)]; }
    double& at(int i, int j, int k) { return data_[index(i, j, k)]; }

    std::span<const double> channel(int k) const {
        return {data_.data() + static_cast<std::size_t>(k) * side_ * side_,
                static_cast<std::size_t>(side_) * side_};
    }
    std::span<double> channel(int k) {
        return {data_.data() + static_cast<std::size_t>(k) * side_ * side_,
                static_cast<std::size_t>(side_) * side_};
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    int side_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

// Complex companion of RealTensor3 (same layout). `from_real_dft` marks spectra
// produced by dft2 of real data, which are conjugate symmetric per channel.
class ComplexTensor3 {
public:
    ComplexTensor3() = default;
    ComplexTensor3(int side, int channels, cplx fill = cplx(0.0, 0.0))
        : side_(side), channels_(channels),
          data_(static_cast<std::size_t>(side) * side * channels, fill) {
        if (side < 2 || channels < 1) throw ShapeError("ComplexTensor3: side >= 2 and channels >= 1 required");
    }

    int side() const { return side_; }
    int channels() const { return channels_; }
    Grid2D grid() const { return Grid2D(side_); }
    std::size_t size() const { return data_.size(); }
    bool same_shape(const ComplexTensor3& o) const { return side_ == o.side_ && channels_ == o.channels_; }

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * side_ + i) * side_ + j;
    }
    cplx at(int i, int j, int k) const { return data_[index(i, j, k)]; }
    cplx& at(int i, int j, int k) { return data_[index(i, j, k)]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    bool from_real_dft = false;

private:
    int side_ = 0;
    int channels_ = 0;
    std::vector<cplx> data_;
};

// --- elementwise algebra -----------------------------------------------------

bool all_finite(const RealTensor3& t);
double frobenius_norm(const RealTensor3& t);
double frobenius_norm_diff(const RealTensor3& a, const RealTensor3& b);
double dot(const RealTensor3& a, const RealTensor3& b);

RealTensor3 operator+(const RealTensor3& a, const RealTensor3& b);
RealTensor3 operator-(const RealTensor3& a, const RealTensor3& b);
RealTensor3 operator*(double s, const RealTensor3& t);
ComplexTensor3 operator+(const ComplexTensor3& a, const ComplexTensor3& b);
ComplexTensor3 operator-(const ComplexTensor3& a, const ComplexTensor3& b);
ComplexTensor3 operator*(cplx s, const ComplexTensor3& t);

// dst += s * src
void add_scaled(RealTensor3& dst, const RealTensor3& src, double s);
void add_scaled(ComplexTensor3& dst, const ComplexTensor3& src, cplx s);

// Content moved so that element (i, j) lands at ((i+di) mod N, (j+dj) mod N).
RealTensor3 circular_shift(const RealTensor3& t, int di, int dj);

// --- per-frequency cross-channel view ----------------------------------------

// Mutable view of the C-vector at one spatial frequency bin.
class FrequencyBin {
public:
    FrequencyBin(ComplexTensor3& t, int i, int j) : t_(&t), i_(i), j_(j) {}
    int i() const { return i_; }
    int j() const { return j_; }
    int channels() const { return t_->channels(); }
    cplx get(int k) const { return t_->at(i_, j_, k); }
    void set(int k, cplx v) { t_->at(i_, j_, k) = v; }
    std::vector<cplx> to_vector() const {
        std::vector<cplx> v(channels());
        for (int k = 0; k < channels(); ++k) v[k] = get(k);
        return v;
    }
    void from_vector(const std::vector<cplx>& v) {
        if (static_cast<int>(v.size()) != channels())
            throw ShapeError("FrequencyBin: vector length != channel count");
        for (int k = 0; k < channels(); ++k) set(k, v[k]);
    }

private:
    ComplexTensor3* t_;
    int i_, j_;
};

// Iterable range over all frequency bins in lexicographic (i, j) order.
class PerFrequencyRange {
public:
    explicit PerFrequencyRange(ComplexTensor3& t) : t_(&t) {}

    class iterator {
    public:
        iterator(ComplexTensor3* t, int flat) : t_(t), flat_(flat) {}
        FrequencyBin operator*() const { return FrequencyBin(*t_, flat_ / t_->side(), flat_ % t_->side()); }
        iterator& operator++() { ++flat_; return *this; }
        bool operator!=(const iterator& o) const { return flat_ != o.flat_; }

    private:
        ComplexTensor3* t_;
        int flat_;
    };

    iterator begin() const { return iterator(t_, 0); }
    iterator end() const { return iterator(t_, t_->side() * t_->side()); }

private:
    ComplexTensor3* t_;
};

inline PerFrequencyRange per_frequency_vectors(ComplexTensor3& t) { return PerFrequencyRange(t); }

} // namespace gfs
