// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gfs/diagnostics.hpp"
#include "gfs/fft.hpp"
#include "gfs/metrics.hpp"
#include "gfs/solver.hpp"
#include "gfs/synthetic.hpp"
#include "gfs/tracker.hpp"
#include "oracles.hpp"

using namespace gfs;

namespace {

ResponseLabel label_for(int n) { return gaussian_label(Grid2D(n), 0.2, 3, 3); }

RegularisationConfig zero_reg() {
    RegularisationConfig reg;
    reg.lambda_spatial = reg.lambda_channel = reg.lambda_temporal = 0.0;
    return reg;
}

SelectionConfig keep_all() {
    SelectionConfig sel;
    sel.channel_ratio = sel.spatial_ratio = 1.0;
    return sel;
}

AdmmConfig contraction_admm(int iters = 100) {
    AdmmConfig admm;
    admm.mu_init = 0.01;
    admm.mu_growth = 1.0;
    admm.mu_max = 100.0;
    admm.max_iters = iters;
    admm.tol_primal = 1e-8;
    admm.tol_change = 1e-12;
    return admm;
}

double mean_cle(const std::vector<BoundingBox>& pred, const std::vector<BoundingBox>& gt) {
    double s = 0.0;
    for (std::size_t t = 0; t < pred.size(); ++t)
        s += std::hypot(pred[t].cx() - gt[t].cx(), pred[t].cy() - gt[t].cy());
    return s / static_cast<double>(pred.size());
}

// ---------------------------------------------------------------------------
// 1. closed form vs dense circulant least-squares oracle
bool criterion_closed_form(std::string& detail) {
    std::mt19937_64 rng(1001);
    const double lambdas[3] = {0.0, 0.1, 1.0};
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const RealTensor3 x = oracle::random_tensor(4, 2, rng);
        const ResponseLabel y = label_for(4);
        const double lambda = lambdas[trial % 3];
        const FilterTensor w = dcf_closed_form(x, y, lambda);
        const RealTensor3 ref = oracle::dense_ridge_solve(x, y.values, lambda);
        worst = std::max(worst, frobenius_norm_diff(w, ref) / std::max(frobenius_norm(ref), 1e-30));
    }
    std::ostringstream ss;
    ss << "worst relative error " << worst << " (tol 1e-6)";
    detail = ss.str();
    return worst < 1e-6;
}

// 2. ADMM with zero group/temporal weights vs the closed form
bool criterion_admm_equivalence(std::string& detail) {
    std::mt19937_64 rng(1002);
    const int sides[2] = {4, 8};
    const int chans[2] = {2, 4};
    double worst = 0.0;
    int worst_iters = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = sides[trial % 2];
        const int c = chans[(trial / 2) % 2];
        const RealTensor3 x = oracle::random_tensor(n, c, rng);
        const ResponseLabel y = label_for(n);
        const RealTensor3 w0(n, c, 0.0);
        const GfsSolution sol = admm_solve(x, y, w0, zero_reg(), keep_all(), contraction_admm(), {});
        const FilterTensor ref = dcf_closed_form(x, y, 0.0);
        worst = std::max(worst,
                         frobenius_norm_diff(sol.filter, ref) / std::max(frobenius_norm(ref), 1e-30));
        worst_iters = std::max(worst_iters, sol.iterations_used);
    }
    std::ostringstream ss;
    ss << "worst relative error " << worst << " (tol 1e-6), max iterations " << worst_iters;
    detail = ss.str();
    return worst < 1e-6 && worst_iters <= 100;
}

// 3. group shrinkage vs 1-D grid search
bool criterion_prox(std::string& detail) {
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double p = 6.0 * (oracle::uniform01(rng) - 0.5);
        const double mu = 0.5 + 4.5 * oracle::uniform01(rng);
        const double lc = 2.0 * oracle::uniform01(rng);
        const double ls = 2.0 * oracle::uniform01(rng);
        RealTensor3 t(2, 1, 0.0);
        t.at(0, 1, 0) = p;
        const RealTensor3 out = group_shrink(t, mu, lc, ls);
        const double expect = oracle::prox_grid_argmin(p, mu, lc + ls);
        worst = std::max(worst, std::abs(out.at(0, 1, 0) - expect));
    }
    std::ostringstream ss;
    ss << "worst |v - grid argmin| " << worst << " (tol 1e-3)";
    detail = ss.str();
    return worst < 1e-3;
}

// 4. full objective vs long-run subgradient descent
bool criterion_full_objective(std::string& detail) {
    std::mt19937_64 rng(1004);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const RealTensor3 x = oracle::random_tensor(4, 2, rng);
        const ResponseLabel y = label_for(4);
        const RealTensor3 wp = oracle::random_tensor(4, 2, rng, 0.05);
        RegularisationConfig reg;
        reg.lambda_spatial = 0.02 + 0.08 * oracle::uniform01(rng);
        reg.lambda_channel = 0.05 + 0.15 * oracle::uniform01(rng);
        reg.lambda_temporal = 0.2 + 0.8 * oracle::uniform01(rng);
        AdmmConfig admm;
        admm.mu_init = 1.0;
        admm.mu_growth = 1.05;
        admm.mu_max = 100.0;
        admm.max_iters = 300;
        admm.tol_primal = 1e-10;
        admm.tol_change = 1e-10;
        const GfsSolution sol = admm_solve(x, y, wp, reg, keep_all(), admm, {});
        const double admm_obj = objective_value(sol.filter, x, y, wp, reg);
        const double oracle_obj =
            oracle::subgradient_best_objective(x, y.values, wp, reg, 100000, 0.0);
        worst = std::max(worst, std::abs(admm_obj - oracle_obj) / oracle_obj);
    }
    std::ostringstream ss;
    ss << "worst relative objective gap " << worst << " (tol 1e-3)";
    detail = ss.str();
    return worst < 1e-3;
}

// 5. channel-selection efficacy on redundant channels
bool criterion_channel_selection(std::string& detail) {
    SyntheticSpec spec;
    spec.frame_width = 420;
    spec.frame_height = 120;
    spec.frame_count = 60;
    spec.object_size = 32;
    spec.velocity_x = 5.0; // exactly one feature cell per frame
    spec.velocity_y = 0.0;
    spec.noise_sigma = 0.0;
    spec.informative_channels = 8;
    spec.noise_channels = 56;
    spec.feature_grid = 16;
    spec.feature_window_scale = 2.5;
    spec.feature_noise = 0.25;
    spec.noise_channel_sigma = 1.0;
    spec.seed = 2024;
    const LoadedSequence seq = as_loaded(generate_synthetic(spec), true);

    TrackerConfig cfg;
    cfg.variant = Variant::all;
    cfg.reg.lambda_spatial = 0.0;
    cfg.reg.lambda_channel = 0.0; // selection here comes from the ratio masks alone
    cfg.reg.lambda_temporal = 0.0;
    cfg.sel.spatial_ratio = 1.0;
    cfg.sel.per_block = true;
    cfg.alpha = 0.2;
    cfg.sigma_factor = 0.2;
    cfg.scale_factors = {1.0};

    TrackerConfig selective = cfg;
    selective.sel.channel_ratio = 0.125; // keep 8 of 64
    TrackerConfig dense = cfg;
    dense.sel.channel_ratio = 1.0;

    const TrackResult sel_run = track_sequence(seq, seq.gt.front(), selective);
    const TrackResult dense_run = track_sequence(seq, seq.gt.front(), dense);
    const double cle_sel = mean_cle(sel_run.boxes, seq.gt);
    const double cle_dense = mean_cle(dense_run.boxes, seq.gt);

    int good_frames = 0;
    for (const auto& mask : sel_run.channel_masks) {
        int informative = 0;
        for (int k = 0; k < 8; ++k) informative += mask[k] ? 1 : 0;
        if (informative >= 7) ++good_frames;
    }
    const double frac = static_cast<double>(good_frames) /
                        static_cast<double>(sel_run.channel_masks.size());

    std::ostringstream ss;
    ss << "mean CLE selective " << cle_sel << " vs dense " << cle_dense
       << "; informative-mask fraction " << frac << " (need < and >= 0.9)";
    detail = ss.str();
    return cle_sel < cle_dense && frac >= 0.9;
}

// 6. temporal term halves the stacked-filter numerical rank
bool criterion_rank(std::string& detail) {
    SyntheticSpec spec;
    spec.frame_width = 220;
    spec.frame_height = 160;
    spec.frame_count = 60;
    spec.object_size = 24;
    spec.motion = MotionKind::sinusoidal;
    spec.amplitude = 20.0;
    spec.period = 25.0;
    spec.velocity_y = 0.8;
    spec.noise_sigma = 6.0;
    spec.seed = 42;
    const LoadedSequence seq = as_loaded(generate_synthetic(spec), false);

    TrackerConfig cfg;
    cfg.features.feature_types = {FeatureType::intensity};
    cfg.features.cell_size = 4;
    cfg.model_side = 64;
    cfg.scale_factors = {1.0};
    cfg.alpha = 0.6;
    cfg.record_history = true;

    TrackerConfig smooth = cfg;
    smooth.variant = Variant::lr;
    smooth.reg.lambda_temporal = 16.0;
    TrackerConfig plain = cfg;
    plain.variant = Variant::baseline;

    const TrackResult smooth_run = track_sequence(seq, seq.gt.front(), smooth);
    const TrackResult plain_run = track_sequence(seq, seq.gt.front(), plain);
    const int rank_smooth = rank_diagnostic(smooth_run.filter_history).numerical_rank;
    const int rank_plain = rank_diagnostic(plain_run.filter_history).numerical_rank;

    std::ostringstream ss;
    ss << "rank with temporal weight 16: " << rank_smooth << ", without: " << rank_plain
       << " (need <= 50%)";
    detail = ss.str();
    return rank_smooth * 2 <= rank_plain;
}

// 7. ablation ordering across five seeds
bool criterion_ablation(std::string& detail) {
    const char* names[5] = {"baseline", "ss", "cs", "lr", "all"};
    std::map<std::string, double> cle_sum;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SyntheticSpec spec;
        spec.frame_width = 220;
        spec.frame_height = 220;
        spec.frame_count = 50;
        spec.object_size = 24;
        spec.velocity_x = 1.5;
        spec.velocity_y = 1.5;
        spec.noise_sigma = 4.0;
        spec.seed = seed;
        const LoadedSequence seq = as_loaded(generate_synthetic(spec), false);

        TrackerConfig cfg;
        cfg.features.feature_types = {FeatureType::intensity, FeatureType::gradient_hist};
        cfg.features.cell_size = 2;
        cfg.model_side = 48;
        cfg.scale_factors = {1.0};
        cfg.alpha = 0.6;
        cfg.reg.lambda_spatial = 0.005;
        cfg.reg.lambda_channel = 0.05;
        cfg.reg.lambda_temporal = 16.0;
        cfg.sel.channel_ratio = 0.9;
        cfg.sel.spatial_ratio = 0.1;

        const auto outcomes = run_ablation(seq, cfg);
        for (const auto& [name, out] : outcomes) {
            if (out.failed) {
                detail = name + " failed: " + out.error;
                return false;
            }
            cle_sum[name] += out.metrics.mean_cle;
        }
    }
    std::ostringstream ss;
    bool ok = true;
    for (const char* name : names) ss << name << " " << cle_sum[name] / 5.0 << "  ";
    const double all = cle_sum["all"] / 5.0;
    const double baseline = cle_sum["baseline"] / 5.0;
    for (const char* name : names) {
        const double v = cle_sum[name] / 5.0;
        if (std::string(name) != "all" && all > v + 0.5) ok = false; // ALL within slack of each
        if (v > baseline + 0.5) ok = false;                          // nothing degrades the baseline
    }
    detail = "mean CLE (px): " + ss.str();
    return ok;
}

// 8. hand-crafted-parameter tracking sanity
bool criterion_tracking_sanity(std::string& detail) {
    SyntheticSpec spec;
    spec.frame_width = 300;
    spec.frame_height = 300;
    spec.frame_count = 100;
    spec.object_size = 20;
    spec.velocity_x = 1.5;
    spec.velocity_y = 1.5;
    spec.noise_sigma = 0.0;
    spec.seed = 8;
    const LoadedSequence seq = as_loaded(generate_synthetic(spec), false);

    TrackerConfig cfg;
    cfg.features.feature_types = {FeatureType::intensity, FeatureType::gradient_hist};
    cfg.features.cell_size = 2;
    cfg.model_side = 48;
    cfg.scale_factors = {1.0};
    cfg.variant = Variant::all;
    cfg.reg.lambda_spatial = 0.005;
    cfg.reg.lambda_channel = 0.05;
    cfg.reg.lambda_temporal = 16.0;
    cfg.sel.channel_ratio = 0.9;
    cfg.sel.spatial_ratio = 0.1;
    cfg.alpha = 0.6;

    const TrackResult run = track_sequence(seq, seq.gt.front(), cfg);
    const double cle = mean_cle(run.boxes, seq.gt);
    std::ostringstream ss;
    ss << "mean CLE " << cle << " px (tol 2.0)";
    detail = ss.str();
    return cle <= 2.0;
}

// 9. invariant property suites, 200 randomised trials each
bool criterion_invariants(std::string& detail) {
    std::ostringstream ss;
    bool ok = true;

    // FFT round trip / linearity / Parseval
    {
        std::mt19937_64 rng(1009);
        double worst_rt = 0.0, worst_lin = 0.0, worst_par = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2 + static_cast<int>(oracle::uniform01(rng) * 31);
            const int c = 1 + static_cast<int>(oracle::uniform01(rng) * 8);
            const RealTensor3 a = oracle::random_tensor(n, c, rng);
            const RealTensor3 b = oracle::random_tensor(n, c, rng);
            const double alpha = oracle::gauss(rng);
            const double beta = oracle::gauss(rng);
            const ComplexTensor3 as = dft2(a);
            const ComplexTensor3 bs = dft2(b);

            const RealTensor3 back = idft2(as);
            for (std::size_t m = 0; m < a.size(); ++m)
                worst_rt = std::max(worst_rt, std::abs(back.data()[m] - a.data()[m]));

            RealTensor3 lin(n, c);
            for (std::size_t m = 0; m < lin.size(); ++m)
                lin.data()[m] = alpha * a.data()[m] + beta * b.data()[m];
            const ComplexTensor3 ls = dft2(lin);
            double scale = 1.0;
            for (std::size_t m = 0; m < ls.size(); ++m) {
                const cplx expect = alpha * as.data()[m] + beta * bs.data()[m];
                scale = std::max(scale, std::abs(expect));
                worst_lin = std::max(worst_lin, std::abs(ls.data()[m] - expect) / scale);
            }

            const std::size_t plane = static_cast<std::size_t>(n) * n;
            for (int k = 0; k < c; ++k) {
                double spatial = 0.0, freq = 0.0;
                for (double v : a.channel(k)) spatial += v * v;
                for (std::size_t m = 0; m < plane; ++m) freq += std::norm(as.data()[k * plane + m]);
                worst_par = std::max(worst_par, std::abs(spatial - freq / (n * n)) /
                                                    std::max(spatial, 1e-30));
            }
        }
        ok = ok && worst_rt < 1e-10 && worst_lin < 1e-9 && worst_par < 1e-9;
        ss << "fft[rt " << worst_rt << ", lin " << worst_lin << ", parseval " << worst_par << "] ";
    }

    // response-shift equivariance
    {
        std::mt19937_64 rng(1013);
        bool shift_ok = true;
        for (int trial = 0; trial < 200 && shift_ok; ++trial) {
            const int n = 4 + static_cast<int>(oracle::uniform01(rng) * 12);
            const int c = 1 + static_cast<int>(oracle::uniform01(rng) * 3);
            const RealTensor3 x = oracle::random_tensor(n, c, rng);
            const RealTensor3 w = oracle::random_tensor(n, c, rng);
            const RealMatrix r0 = circ_correlate(x, w);
            int pi = 0, pj = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (r0.at(i, j) > r0.at(pi, pj)) { pi = i; pj = j; }
            const int di = static_cast<int>(oracle::uniform01(rng) * n);
            const int dj = static_cast<int>(oracle::uniform01(rng) * n);
            const RealMatrix rs = circ_correlate(circular_shift(x, di, dj), w);
            int qi = 0, qj = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (rs.at(i, j) > rs.at(qi, qj)) { qi = i; qj = j; }
            shift_ok = qi == (pi + di) % n && qj == (pj + dj) % n;
        }
        ok = ok && shift_ok;
        ss << "shift[" << (shift_ok ? "ok" : "FAIL") << "] ";
    }

    // mask cardinalities on random solves
    {
        std::mt19937_64 rng(1019);
        bool mask_ok = true;
        AdmmConfig admm = contraction_admm(10);
        for (int trial = 0; trial < 200 && mask_ok; ++trial) {
            const int n = 4;
            const int c = 2 + static_cast<int>(oracle::uniform01(rng) * 5);
            const RealTensor3 x = oracle::random_tensor(n, c, rng);
            const ResponseLabel y = label_for(n);
            const RealTensor3 w0(n, c, 0.0);
            RegularisationConfig reg;
            reg.lambda_spatial = 0.05 * oracle::uniform01(rng);
            reg.lambda_channel = 0.05 * oracle::uniform01(rng);
            reg.lambda_temporal = 0.0;
            SelectionConfig sel;
            sel.channel_ratio = 0.2 + 0.8 * oracle::uniform01(rng);
            sel.spatial_ratio = 0.2 + 0.8 * oracle::uniform01(rng);
            sel.per_block = false;
            const GfsSolution sol = admm_solve(x, y, w0, reg, sel, admm, {});
            int kept_c = 0;
            for (bool b : sol.mask.channel_keep) kept_c += b ? 1 : 0;
            int kept_s = 0;
            for (bool b : sol.mask.spatial_keep) kept_s += b ? 1 : 0;
            mask_ok = kept_c == static_cast<int>(std::llround(sel.channel_ratio * c)) &&
                      kept_s == static_cast<int>(std::llround(sel.spatial_ratio * n * n));
            if (mask_ok) {
                for (int k = 0; k < c && mask_ok; ++k)
                    for (int i = 0; i < n && mask_ok; ++i)
                        for (int j = 0; j < n && mask_ok; ++j)
                            if (!sol.mask.keeps(i, j, k)) mask_ok = sol.filter.at(i, j, k) == 0.0;
            }
        }
        ok = ok && mask_ok;
        ss << "masks[" << (mask_ok ? "ok" : "FAIL") << "] ";
    }

    // metric curve monotonicity
    {
        std::mt19937_64 rng(1021);
        bool curves_ok = true;
        for (int trial = 0; trial < 200 && curves_ok; ++trial) {
            std::vector<BoundingBox> pred, gt;
            const int frames = 2 + static_cast<int>(oracle::uniform01(rng) * 30);
            for (int t = 0; t < frames; ++t) {
                gt.push_back({60 * oracle::uniform01(rng), 60 * oracle::uniform01(rng),
                              4 + 25 * oracle::uniform01(rng), 4 + 25 * oracle::uniform01(rng)});
                pred.push_back({60 * oracle::uniform01(rng), 60 * oracle::uniform01(rng),
                                4 + 25 * oracle::uniform01(rng), 4 + 25 * oracle::uniform01(rng)});
            }
            const MetricsReport m = compute_metrics(pred, gt);
            for (std::size_t i = 1; i < m.precision_curve.size() && curves_ok; ++i)
                curves_ok = m.precision_curve[i].second >= m.precision_curve[i - 1].second;
            for (std::size_t i = 1; i < m.success_curve.size() && curves_ok; ++i)
                curves_ok = m.success_curve[i].second <= m.success_curve[i - 1].second;
        }
        ok = ok && curves_ok;
        ss << "curves[" << (curves_ok ? "ok" : "FAIL") << "] ";
    }

    // determinism byte-equality: generator (195 trials) + tracking runs (5 pairs)
    {
        bool det_ok = true;
        for (int trial = 0; trial < 195 && det_ok; ++trial) {
            SyntheticSpec spec;
            spec.frame_width = 64;
            spec.frame_height = 64;
            spec.frame_count = 3;
            spec.object_size = 10;
            spec.velocity_x = 0.5;
            spec.noise_sigma = 4.0;
            spec.seed = 5000 + trial;
            const SyntheticSequence a = generate_synthetic(spec);
            const SyntheticSequence b = generate_synthetic(spec);
            for (std::size_t t = 0; t < a.frames.size() && det_ok; ++t)
                det_ok = a.frames[t].pixels == b.frames[t].pixels;
        }
        for (int pair = 0; pair < 5 && det_ok; ++pair) {
            SyntheticSpec spec;
            spec.frame_width = 140;
            spec.frame_height = 100;
            spec.frame_count = 6;
            spec.object_size = 20;
            spec.velocity_x = 1.0;
            spec.noise_sigma = 3.0;
            spec.seed = 6000 + pair;
            const LoadedSequence seq = as_loaded(generate_synthetic(spec), false);
            TrackerConfig cfg;
            cfg.features.feature_types = {FeatureType::intensity, FeatureType::gradient_hist};
            cfg.features.cell_size = 4;
            cfg.model_side = 32;
            cfg.scale_factors = {1.0};
            cfg.admm.max_iters = 15;
            const TrackResult a = track_sequence(seq, seq.gt.front(), cfg);
            const TrackResult b = track_sequence(seq, seq.gt.front(), cfg);
            det_ok = a.boxes.size() == b.boxes.size();
            for (std::size_t t = 0; t < a.boxes.size() && det_ok; ++t)
                det_ok = std::memcmp(&a.boxes[t], &b.boxes[t], sizeof(BoundingBox)) == 0;
            det_ok = det_ok && a.peaks == b.peaks;
        }
        ok = ok && det_ok;
        ss << "determinism[" << (det_ok ? "ok" : "FAIL") << "]";
    }

    detail = ss.str();
    return ok;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"1 closed-form oracle equivalence", criterion_closed_form},
        {"2 admm oracle equivalence", criterion_admm_equivalence},
        {"3 group-shrinkage prox correctness", criterion_prox},
        {"4 full-objective oracle match", criterion_full_objective},
        {"5 channel-selection efficacy", criterion_channel_selection},
        {"6 temporal rank directionality", criterion_rank},
        {"7 ablation ordering", criterion_ablation},
        {"8 tracking sanity", criterion_tracking_sanity},
        {"9 invariant suites (200 trials each)", criterion_invariants},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %s (%.1fs) - %s\n", ok ? "PASS" : "FAIL", c.name, secs,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
