#pragma once

#include <map>
#include <string>
#include <vector>

#include "gfs/metrics.hpp"
#include "gfs/tracker.hpp"

namespace gfs {

struct RankDiagnostic {
    int numerical_rank = 0;
    std::vector<double> singular_values; // descending
    double tolerance_ratio = 1e-3;
};

// Singular values of the (N^2 C) x t matrix stacking the vectorised filters;
// numerical rank counts sigma_i > tolerance_ratio * sigma_1.
RankDiagnostic rank_diagnostic(const std::vector<std::vector<double>>& history,
                               double tolerance_ratio = 1e-3);

struct VariantOutcome {
    bool failed = false;
    std::string error;
    MetricsReport metrics;
    RealMatrix heatmap; // channel-energy map of the final learned filter
    TrackResult track;
};

// Runs the five ablation variants (baseline, ss, cs, lr, all) with shared
// features and update rate. A failing variant is reported in-place without
// aborting the others.
std::map<std::string, VariantOutcome> run_ablation(const LoadedSequence& seq,
                                                   const TrackerConfig& base_cfg);

struct SweepPoint {
    double lambda_spatial = 0;
    double lambda_channel = 0;
    double lambda_temporal = 0;
    double auc = 0;
    double mean_cle = 0;
};

// Cartesian sweep over the lambda grids, one tracking run per point.
std::vector<SweepPoint> sensitivity_sweep(const LoadedSequence& seq, const TrackerConfig& base_cfg,
                                          const std::vector<double>& lambda_spatial_grid,
                                          const std::vector<double>& lambda_channel_grid,
                                          const std::vector<double>& lambda_temporal_grid);

} // namespace gfs
