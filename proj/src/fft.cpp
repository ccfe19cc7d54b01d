#include "gfs/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace gfs {
namespace {

// FFTW's planner is not thread safe; executing distinct plans is. Each thread
// keeps its own plans and a tightly aligned buffer (fftw_malloc) so that codelet
// selection is reproducible across calls.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanSet {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    PlanSet() = default;
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
    PlanSet(PlanSet&& o) noexcept { *this = std::move(o); }
    PlanSet& operator=(PlanSet&& o) noexcept {
        std::swap(buf, o.buf);
        std::swap(fwd, o.fwd);
        std::swap(bwd, o.bwd);
        return *this;
    }
    ~PlanSet() {
        if (buf) {
            std::lock_guard<std::mutex> lk(planner_mutex());
            fftw_destroy_plan(fwd);
            fftw_destroy_plan(bwd);
            fftw_free(buf);
        }
    }
};

PlanSet& plans_for(int n) {
    thread_local std::map<int, PlanSet> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        PlanSet p;
        std::lock_guard<std::mutex> lk(planner_mutex());
        p.buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
        p.fwd = fftw_plan_dft_2d(n, n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_2d(n, n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        it = cache.emplace(n, std::move(p)).first;
    }
    return it->second;
}

double max_abs(const ComplexTensor3& t) {
    double m = 0.0;
    for (const cplx& v : t.data()) m = std::max(m, std::abs(v));
    return m;
}

void check_conjugate_symmetry(const ComplexTensor3& t) {
    const int n = t.side();
    const double tol = 1e-9 * std::max(1.0, max_abs(t));
    for (int k = 0; k < t.channels(); ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cplx mirrored = t.at((n - i) % n, (n - j) % n, k);
                if (std::abs(t.at(i, j, k) - std::conj(mirrored)) > tol)
                    throw SymmetryError("idft2: spectrum is not conjugate symmetric within tolerance");
            }
}

} // namespace

ComplexTensor3 dft2(const RealTensor3& t) {
    if (!all_finite(t)) throw NumericError("dft2: input contains non-finite values");
    const int n = t.side();
    PlanSet& p = plans_for(n);
    ComplexTensor3 out(n, t.channels());
    const std::size_t plane = static_cast<std::size_t>(n) * n;
    for (int k = 0; k < t.channels(); ++k) {
        auto src = t.channel(k);
        for (std::size_t m = 0; m < plane; ++m) {
            p.buf[m][0] = src[m];
            p.buf[m][1] = 0.0;
        }
        fftw_execute(p.fwd);
        cplx* dst = out.data().data() + k * plane;
        for (std::size_t m = 0; m < plane; ++m) dst[m] = cplx(p.buf[m][0], p.buf[m][1]);
    }
    out.from_real_dft = true;
    return out;
}

RealTensor3 idft2(const ComplexTensor3& t) {
    check_conjugate_symmetry(t);
    const int n = t.side();
    PlanSet& p = plans_for(n);
    RealTensor3 out(n, t.channels());
    const std::size_t plane = static_cast<std::size_t>(n) * n;
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (int k = 0; k < t.channels(); ++k) {
        const cplx* src = t.data().data() + k * plane;
        for (std::size_t m = 0; m < plane; ++m) {
            p.buf[m][0] = src[m].real();
            p.buf[m][1] = src[m].imag();
        }
        fftw_execute(p.bwd);
        auto dst = out.channel(k);
        for (std::size_t m = 0; m < plane; ++m) dst[m] = p.buf[m][0] * scale;
    }
    return out;
}

RealMatrix circ_correlate(const RealTensor3& a, const RealTensor3& w) {
    if (!a.same_shape(w)) throw ShapeError("circ_correlate: shape mismatch");
    const ComplexTensor3 ah = dft2(a);
    const ComplexTensor3 wh = dft2(w);
    const int n = a.side();
    const std::size_t plane = static_cast<std::size_t>(n) * n;
    std::vector<cplx> acc(plane, cplx(0.0, 0.0));
    for (int k = 0; k < a.channels(); ++k) {
        const cplx* ap = ah.data().data() + k * plane;
        const cplx* wp = wh.data().data() + k * plane;
        for (std::size_t m = 0; m < plane; ++m) acc[m] += std::conj(wp[m]) * ap[m];
    }
    return idft2_plane(acc, n);
}

std::vector<cplx> dft2_plane(const RealMatrix& m) {
    const int n = m.side();
    PlanSet& p = plans_for(n);
    const std::size_t plane = static_cast<std::size_t>(n) * n;
    for (std::size_t q = 0; q < plane; ++q) {
        p.buf[q][0] = m.data()[q];
        p.buf[q][1] = 0.0;
    }
    fftw_execute(p.fwd);
    std::vector<cplx> out(plane);
    for (std::size_t q = 0; q < plane; ++q) out[q] = cplx(p.buf[q][0], p.buf[q][1]);
    return out;
}

RealMatrix idft2_plane(const std::vector<cplx>& spectrum, int side) {
    if (spectrum.size() != static_cast<std::size_t>(side) * side)
        throw ShapeError("idft2_plane: spectrum size does not match side");
    PlanSet& p = plans_for(side);
    const std::size_t plane = spectrum.size();
    for (std::size_t q = 0; q < plane; ++q) {
        p.buf[q][0] = spectrum[q].real();
        p.buf[q][1] = spectrum[q].imag();
    }
    fftw_execute(p.bwd);
    RealMatrix out(side);
    const double scale = 1.0 / static_cast<double>(plane);
    for (std::size_t q = 0; q < plane; ++q) out.data()[q] = p.buf[q][0] * scale;
    return out;
}

} // namespace gfs
