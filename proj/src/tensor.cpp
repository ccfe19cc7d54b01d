#include "gfs/tensor.hpp"

#include <cmath>

namespace gfs {

bool all_finite(const RealTensor3& t) {
    for (double v : t.data())
        if (!std::isfinite(v)) return false;
    return true;
}

double frobenius_norm(const RealTensor3& t) {
    double s = 0.0;
    for (double v : t.data()) s += v * v;
    return std::sqrt(s);
}

double frobenius_norm_diff(const RealTensor3& a, const RealTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("frobenius_norm_diff: shape mismatch");
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double d = a.data()[n] - b.data()[n];
        s += d * d;
    }
    return std::sqrt(s);
}

double dot(const RealTensor3& a, const RealTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("dot: shape mismatch");
    double s = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) s += a.data()[n] * b.data()[n];
    return s;
}

RealTensor3 operator+(const RealTensor3& a, const RealTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("tensor +: shape mismatch");
    RealTensor3 r = a;
    for (std::size_t n = 0; n < r.size(); ++n) r.data()[n] += b.data()[n];
    return r;
}

RealTensor3 operator-(const RealTensor3& a, const RealTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("tensor -: shape mismatch");
    RealTensor3 r = a;
    for (std::size_t n = 0; n < r.size(); ++n) r.data()[n] -= b.data()[n];
    return r;
}

RealTensor3 operator*(double s, const RealTensor3& t) {
    RealTensor3 r = t;
    for (double& v : r.data()) v *= s;
    return r;
}

ComplexTensor3 operator+(const ComplexTensor3& a, const ComplexTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("tensor +: shape mismatch");
    ComplexTensor3 r = a;
    for (std::size_t n = 0; n < r.size(); ++n) r.data()[n] += b.data()[n];
    return r;
}

ComplexTensor3 operator-(const ComplexTensor3& a, const ComplexTensor3& b) {
    if (!a.same_shape(b)) throw ShapeError("tensor -: shape mismatch");
    ComplexTensor3 r = a;
    for (std::size_t n = 0; n < r.size(); ++n) r.data()[n] -= b.data()[n];
    return r;
}

ComplexTensor3 operator*(cplx s, const ComplexTensor3& t) {
    ComplexTensor3 r = t;
    for (cplx& v : r.data()) v *= s;
    return r;
}

void add_scaled(RealTensor3& dst, const RealTensor3& src, double s) {
    if (!dst.same_shape(src)) throw ShapeError("add_scaled: shape mismatch");
    for (std::size_t n = 0; n < dst.size(); ++n) dst.data()[n] += s * src.data()[n];
}

void add_scaled(ComplexTensor3& dst, const ComplexTensor3& src, cplx s) {
    if (!dst.same_shape(src)) throw ShapeError("add_scaled: shape mismatch");
    for (std::size_t n = 0; n < dst.size(); ++n) dst.data()[n] += s * src.data()[n];
}

RealTensor3 circular_shift(const RealTensor3& t, int di, int dj) {
    const int n = t.side();
    auto wrap = [n](int v) { return ((v % n) + n) % n; };
    RealTensor3 out(n, t.channels());
    for (int k = 0; k < t.channels(); ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.at(wrap(i + di), wrap(j + dj), k) = t.at(i, j, k);
    return out;
}

} // namespace gfs
