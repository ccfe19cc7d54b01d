#include "gfs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gfs/parallel.hpp"

namespace gfs {
namespace {

// Signed circular offset of index i on a ring of size n, in (-n/2, n/2].
inline int ring_offset(int i, int n) { return i <= n - i ? i : i - n; }

double sum_squares(const RealMatrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return s;
}

std::vector<ChannelRange> effective_blocks(const std::vector<ChannelRange>& blocks,
                                           int channels, bool per_block) {
    if (!per_block || blocks.empty()) return {{0, channels}};
    int expect = 0;
    for (const ChannelRange& b : blocks) {
        if (b.begin != expect || b.end <= b.begin)
            throw ShapeError("admm_solve: channel blocks must tile the channel axis");
        expect = b.end;
    }
    if (expect != channels) throw ShapeError("admm_solve: channel blocks do not cover all channels");
    return blocks;
}

// Data-fit term computed from cached spectra: || idft(sum_k conj(Wh^k) Xh^k) - Y ||_F^2.
double data_term_from_spectra(const ComplexTensor3& wh, const ComplexTensor3& xh,
                              const ResponseLabel& y) {
    const int n = xh.side();
    const std::size_t plane = static_cast<std::size_t>(n) * n;
    std::vector<cplx> acc(plane, cplx(0.0, 0.0));
    for (int k = 0; k < xh.channels(); ++k) {
        const cplx* xp = xh.data().data() + k * plane;
        const cplx* wp = wh.data().data() + k * plane;
        for (std::size_t m = 0; m < plane; ++m) acc[m] += std::conj(wp[m]) * xp[m];
    }
    const RealMatrix r = idft2_plane(acc, n);
    double s = 0.0;
    for (std::size_t m = 0; m < plane; ++m) {
        const double d = r.data()[m] - y.values.data()[m];
        s += d * d;
    }
    return s;
}

double regulariser_terms(const RealTensor3& w, const RealTensor3& w_prev,
                         const RegularisationConfig& reg) {
    double obj = 0.0;
    if (reg.lambda_spatial > 0) {
        const RealMatrix sa = spatial_group_attributes(w);
        obj += reg.lambda_spatial * std::accumulate(sa.data().begin(), sa.data().end(), 0.0);
    }
    if (reg.lambda_channel > 0) {
        const std::vector<double> ca = channel_group_attributes(w);
        obj += reg.lambda_channel * std::accumulate(ca.begin(), ca.end(), 0.0);
    }
    if (reg.lambda_temporal > 0) {
        const double d = frobenius_norm_diff(w, w_prev);
        obj += reg.lambda_temporal * d * d;
    }
    return obj;
}

} // namespace

ResponseLabel gaussian_label(Grid2D grid, double sigma_factor,
                             double target_w_cells, double target_h_cells) {
    if (sigma_factor <= 0) throw ConfigError("gaussian_label: sigma_factor must be positive");
    if (target_w_cells <= 0 || target_h_cells <= 0)
        throw ConfigError("gaussian_label: target size must be positive");
    const int n = grid.side();
    const double sigma = sigma_factor * std::sqrt(target_w_cells * target_h_cells);
    ResponseLabel label;
    label.values = RealMatrix(n);
    for (int i = 0; i < n; ++i) {
        const double di = ring_offset(i, n);
        for (int j = 0; j < n; ++j) {
            const double dj = ring_offset(j, n);
            label.values.at(i, j) = std::exp(-0.5 * (di * di + dj * dj) / (sigma * sigma));
        }
    }
    label.spectrum = dft2_plane(label.values);
    return label;
}

FilterTensor dcf_closed_form(const FeatureTensor& x, const ResponseLabel& y, double ridge_lambda) {
    if (x.side() != y.side()) throw ShapeError("dcf_closed_form: feature/label grids differ");
    if (ridge_lambda < 0) throw ConfigError("dcf_closed_form: ridge_lambda must be nonnegative");
    const ComplexTensor3 xh = dft2(x);
    const int n = x.side();
    const int C = x.channels();
    const std::size_t plane = static_cast<std::size_t>(n) * n;
    ComplexTensor3 wh(n, C);
    for (std::size_t m = 0; m < plane; ++m) {
        double energy = 0.0;
        for (int k = 0; k < C; ++k) energy += std::norm(xh.data()[k * plane + m]);
        if (energy == 0.0 && ridge_lambda == 0.0)
            throw SingularError("dcf_closed_form: zero-energy frequency bin with lambda == 0");
        const cplx coef = std::conj(y.spectrum[m]) / (ridge_lambda + energy);
        for (int k = 0; k < C; ++k)
            wh.data()[k * plane + m] = xh.data()[k * plane + m] * coef;
    }
    wh.from_real_dft = true;
    return idft2(wh);
}

RealMatrix spatial_group_attributes(const RealTensor3& w) {
    const int n = w.side();
    RealMatrix a(n);
    for (int k = 0; k < w.channels(); ++k) {
        auto slice = w.channel(k);
        for (std::size_t m = 0; m < slice.size(); ++m) a.data()[m] += slice[m] * slice[m];
    }
    for (double& v : a.data()) v = std::sqrt(v);
    return a;
}

std::vector<double> channel_group_attributes(const RealTensor3& w) {
    std::vector<double> a(w.channels(), 0.0);
    for (int k = 0; k < w.channels(); ++k) {
        double s = 0.0;
        for (double v : w.channel(k)) s += v * v;
        a[k] = std::sqrt(s);
    }
    return a;
}

std::vector<bool> prune_by_ratio(const std::vector<double>& attrs, double ratio) {
    if (ratio <= 0 || ratio > 1) throw ConfigError("prune_by_ratio: ratio must lie in (0, 1]");
    const std::size_t len = attrs.size();
    const auto keep_count = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(len)));
    std::vector<std::size_t> order(len);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return attrs[a] > attrs[b]; });
    std::vector<bool> keep(len, false);
    for (std::size_t r = 0; r < std::min(keep_count, len); ++r) keep[order[r]] = true;
    return keep;
}

RealTensor3 group_shrink(const RealTensor3& p, double mu,
                         double lambda_channel, double lambda_spatial) {
    if (mu <= 0) throw ConfigError("group_shrink: mu must be positive");
    const int n = p.side();
    const std::vector<double> cn = channel_group_attributes(p);
    const RealMatrix sn = spatial_group_attributes(p);
    RealTensor3 out(n, p.channels());
    for (int k = 0; k < p.channels(); ++k) {
        auto src = p.channel(k);
        auto dst = out.channel(k);
        for (std::size_t m = 0; m < src.size(); ++m) {
            double f = 1.0;
            if (lambda_channel > 0) {
                if (cn[k] == 0.0) continue; // zero-norm group stays zero
                f -= lambda_channel / (mu * cn[k]);
            }
            if (lambda_spatial > 0) {
                if (sn.data()[m] == 0.0) continue;
                f -= lambda_spatial / (mu * sn.data()[m]);
            }
            dst[m] = std::max(0.0, f) * src[m];
        }
    }
    return out;
}

double objective_value(const FilterTensor& w, const FeatureTensor& x, const ResponseLabel& y,
                       const FilterTensor& w_prev, const RegularisationConfig& reg) {
    if (!w.same_shape(x) || !w.same_shape(w_prev) || w.side() != y.side())
        throw ShapeError("objective_value: shape mismatch");
    const RealMatrix r = circ_correlate(x, w);
    double data = 0.0;
    for (std::size_t m = 0; m < r.size(); ++m) {
        const double d = r.data()[m] - y.values.data()[m];
        data += d * d;
    }
    return data + regulariser_terms(w, w_prev, reg);
}

bool trace_diverged(const std::vector<double>& trace) {
    int streak = 0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        const double prev = trace[i - 1];
        if (trace[i] > prev + 1e-6 * std::max(std::abs(prev), 1.0)) {
            if (++streak >= 10) return true;
        } else {
            streak = 0;
        }
    }
    return false;
}

GfsSolution admm_solve(const FeatureTensor& x, const ResponseLabel& y, const FilterTensor& w_prev,
                       const RegularisationConfig& reg, const SelectionConfig& sel,
                       const AdmmConfig& admm, const std::vector<ChannelRange>& blocks) {
    if (!x.same_shape(w_prev) || x.side() != y.side())
        throw ShapeError("admm_solve: shape mismatch between features, label and previous filter");
    reg.validate();
    sel.validate();
    admm.validate();
    const int n = x.side();
    const int C = x.channels();
    const std::size_t plane = static_cast<std::size_t>(n) * n;
    const std::vector<ChannelRange> channel_blocks = effective_blocks(blocks, C, sel.per_block);

    const ComplexTensor3 xh = dft2(x);
    // Per-bin feature energy and x_hat * conj(y_hat), fixed across iterations.
    std::vector<double> energy(plane, 0.0);
    ComplexTensor3 xy(n, C);
    for (std::size_t m = 0; m < plane; ++m) {
        const cplx yc = std::conj(y.spectrum[m]);
        for (int k = 0; k < C; ++k) {
            const cplx xv = xh.data()[k * plane + m];
            energy[m] += std::norm(xv);
            xy.data()[k * plane + m] = xv * yc;
        }
    }

    const ComplexTensor3 wph = dft2(w_prev); // spectrum of the temporal anchor
    RealTensor3 w = w_prev;
    RealTensor3 wprime = w_prev;
    ComplexTensor3 wh = wph;
    ComplexTensor3 wprime_h = wph;
    RealTensor3 gamma(n, C, 0.0);
    ComplexTensor3 gamma_h(n, C);
    double mu = admm.mu_init;
    const double lt = reg.lambda_temporal;

    GfsSolution sol;
    sol.objective_trace.push_back(data_term_from_spectra(wprime_h, xh, y) +
                                  regulariser_terms(wprime, w_prev, reg));

    double rel_primal = 0.0;
    int iters = 0;
    for (int iter = 1; iter <= admm.max_iters; ++iter) {
        iters = iter;
        const RealTensor3 w_last = w;

        // (a) per-bin filter update: (xh xh^H + rho I) wh = xy + lt*wph + (mu/2)wprime_h - gamma_h/2
        const double rho = lt + 0.5 * mu;
        const double half_mu = 0.5 * mu;
        parallel_for(plane, [&](std::size_t m) {
            cplx xHb(0.0, 0.0);
            std::vector<cplx> b(C);
            for (int k = 0; k < C; ++k) {
                const std::size_t idx = k * plane + m;
                b[k] = xy.data()[idx] + lt * wph.data()[idx] +
                       half_mu * wprime_h.data()[idx] - 0.5 * gamma_h.data()[idx];
                xHb += std::conj(xh.data()[idx]) * b[k];
            }
            const cplx corr = xHb / (rho + energy[m]);
            for (int k = 0; k < C; ++k) {
                const std::size_t idx = k * plane + m;
                wh.data()[idx] = (b[k] - xh.data()[idx] * corr) / rho;
            }
        });
        wh.from_real_dft = true;
        w = idft2(wh);

        // (b) consensus update via joint group shrinkage on p = w + Gamma/mu
        RealTensor3 p = gamma;
        for (std::size_t q = 0; q < p.size(); ++q)
            p.data()[q] = w.data()[q] + p.data()[q] / mu;
        wprime = group_shrink(p, mu, reg.lambda_channel, reg.lambda_spatial);
        wprime_h = dft2(wprime);

        // (c) dual update, kept in both domains (the DFT is linear)
        for (std::size_t q = 0; q < gamma.size(); ++q)
            gamma.data()[q] += mu * (w.data()[q] - wprime.data()[q]);
        for (std::size_t q = 0; q < gamma_h.size(); ++q)
            gamma_h.data()[q] += mu * (wh.data()[q] - wprime_h.data()[q]);

        sol.objective_trace.push_back(data_term_from_spectra(wprime_h, xh, y) +
                                      regulariser_terms(wprime, w_prev, reg));
        if (trace_diverged(sol.objective_trace))
            throw DivergenceError("admm_solve: objective increased for 10 consecutive iterations",
                                  sol.objective_trace);

        const double wn = std::max(frobenius_norm(w), 1.0);
        rel_primal = frobenius_norm_diff(w, wprime) / wn;
        const double rel_change = frobenius_norm_diff(w, w_last) / wn;
        if (rel_primal <= admm.tol_primal && rel_change <= admm.tol_change) break;

        // (d) penalty growth
        mu = std::min(mu * admm.mu_growth, admm.mu_max);
    }

    // Masks from the converged consensus variable; hard pruning by zeroing.
    SelectionMask mask;
    mask.side = n;
    mask.channel_keep.assign(C, false);
    const std::vector<double> cattrs = channel_group_attributes(wprime);
    for (const ChannelRange& blk : channel_blocks) {
        const std::vector<double> local(cattrs.begin() + blk.begin, cattrs.begin() + blk.end);
        const std::vector<bool> keep = prune_by_ratio(local, sel.channel_ratio);
        for (int k = 0; k < blk.count(); ++k) mask.channel_keep[blk.begin + k] = keep[k];
    }
    const RealMatrix sattrs = spatial_group_attributes(wprime);
    mask.spatial_keep = prune_by_ratio(sattrs.data(), sel.spatial_ratio);

    sol.filter = wprime;
    for (int k = 0; k < C; ++k) {
        auto slice = sol.filter.channel(k);
        for (std::size_t m = 0; m < plane; ++m)
            if (!mask.channel_keep[k] || !mask.spatial_keep[m]) slice[m] = 0.0;
    }
    sol.mask = std::move(mask);
    sol.iterations_used = iters;
    sol.primal_residual = rel_primal;
    return sol;
}

FilterTensor model_update(const FilterTensor& w_new, const FilterTensor& w_model, double alpha) {
    if (!w_new.same_shape(w_model)) throw ShapeError("model_update: shape mismatch");
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("model_update: alpha must lie in [0, 1]");
    RealTensor3 out = w_new;
    for (std::size_t m = 0; m < out.size(); ++m)
        out.data()[m] = alpha * w_new.data()[m] + (1.0 - alpha) * w_model.data()[m];
    return out;
}

} // namespace gfs
