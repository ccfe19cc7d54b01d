#pragma once

#include <utility>
#include <vector>

#include "gfs/tracker.hpp"

namespace gfs {

struct MetricsReport {
    double mean_cle = 0.0;
    double dp_at_threshold = 0.0;
    double op_at_iou = 0.0;
    double auc = 0.0;
    double dp_threshold = 20.0;
    double op_iou = 0.5;
    std::vector<std::pair<double, double>> precision_curve; // thresholds 0..50 px, step 1
    std::vector<std::pair<double, double>> success_curve;   // IoU 0..1, step 0.05
};

// Intersection over union; symmetric, in [0,1], 1 iff the boxes coincide.
double iou(const BoundingBox& a, const BoundingBox& b);

MetricsReport compute_metrics(const std::vector<BoundingBox>& pred,
                              const std::vector<BoundingBox>& gt,
                              double dp_threshold = 20.0, double op_iou = 0.5);

} // namespace gfs
