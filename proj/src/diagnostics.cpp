#include "gfs/diagnostics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "gfs/parallel.hpp"

namespace gfs {

RankDiagnostic rank_diagnostic(const std::vector<std::vector<double>>& history,
                               double tolerance_ratio) {
    if (history.empty()) throw InputError("rank_diagnostic: need at least one filter");
    const std::size_t dim = history.front().size();
    for (const auto& col : history)
        if (col.size() != dim) throw ShapeError("rank_diagnostic: inconsistent filter lengths");

    Eigen::MatrixXd stacked(dim, history.size());
    for (std::size_t c = 0; c < history.size(); ++c)
        for (std::size_t r = 0; r < dim; ++r) stacked(r, c) = history[c][r];

    Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked);
    RankDiagnostic d;
    d.tolerance_ratio = tolerance_ratio;
    d.singular_values.assign(svd.singularValues().data(),
                             svd.singularValues().data() + svd.singularValues().size());
    const double top = d.singular_values.empty() ? 0.0 : d.singular_values.front();
    for (double s : d.singular_values)
        if (s > tolerance_ratio * top) ++d.numerical_rank;
    return d;
}

std::map<std::string, VariantOutcome> run_ablation(const LoadedSequence& seq,
                                                   const TrackerConfig& base_cfg) {
    if (seq.frames.empty() || seq.gt.empty())
        throw InputError("run_ablation: sequence with ground truth required");
    static const Variant kVariants[] = {Variant::baseline, Variant::ss, Variant::cs,
                                        Variant::lr, Variant::all};
    std::vector<VariantOutcome> outcomes(5);
    parallel_for(5, [&](std::size_t v) {
        TrackerConfig cfg = base_cfg;
        cfg.variant = kVariants[v];
        VariantOutcome& out = outcomes[v];
        try {
            out.track = track_sequence(seq, seq.gt.front(), cfg);
            out.metrics = compute_metrics(out.track.boxes, seq.gt);
            out.heatmap = spatial_group_attributes(out.track.final_learned_filter);
        } catch (const Error& e) {
            out.failed = true;
            out.error = e.what();
        }
    });
    std::map<std::string, VariantOutcome> result;
    for (int v = 0; v < 5; ++v) result[variant_name(kVariants[v])] = std::move(outcomes[v]);
    return result;
}

std::vector<SweepPoint> sensitivity_sweep(const LoadedSequence& seq, const TrackerConfig& base_cfg,
                                          const std::vector<double>& lambda_spatial_grid,
                                          const std::vector<double>& lambda_channel_grid,
                                          const std::vector<double>& lambda_temporal_grid) {
    if (lambda_spatial_grid.empty() || lambda_channel_grid.empty() || lambda_temporal_grid.empty())
        throw InputError("sensitivity_sweep: all three grids must be nonempty");
    std::vector<SweepPoint> grid;
    for (double ls : lambda_spatial_grid)
        for (double lc : lambda_channel_grid)
            for (double lt : lambda_temporal_grid)
                grid.push_back({ls, lc, lt, 0.0, 0.0});
    parallel_for(grid.size(), [&](std::size_t g) {
        TrackerConfig cfg = base_cfg;
        cfg.variant = Variant::all;
        cfg.reg.lambda_spatial = grid[g].lambda_spatial;
        cfg.reg.lambda_channel = grid[g].lambda_channel;
        cfg.reg.lambda_temporal = grid[g].lambda_temporal;
        const TrackResult track = track_sequence(seq, seq.gt.front(), cfg);
        const MetricsReport m = compute_metrics(track.boxes, seq.gt);
        grid[g].auc = m.auc;
        grid[g].mean_cle = m.mean_cle;
    });
    return grid;
}

} // namespace gfs
