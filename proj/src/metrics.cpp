#include "gfs/metrics.hpp"

#include <cmath>

namespace gfs {

double iou(const BoundingBox& a, const BoundingBox& b) {
    // Areas use the same clipped-edge arithmetic as the intersection so that
    // identical boxes give exactly 1.
    const double ax2 = a.x + a.w, ay2 = a.y + a.h;
    const double bx2 = b.x + b.w, by2 = b.y + b.h;
    const double ix = std::max(0.0, std::min(ax2, bx2) - std::max(a.x, b.x));
    const double iy = std::max(0.0, std::min(ay2, by2) - std::max(a.y, b.y));
    const double inter = ix * iy;
    const double area_a = (ax2 - a.x) * (ay2 - a.y);
    const double area_b = (bx2 - b.x) * (by2 - b.y);
    const double uni = area_a + area_b - inter;
    return uni <= 0 ? 0.0 : inter / uni;
}

MetricsReport compute_metrics(const std::vector<BoundingBox>& pred,
                              const std::vector<BoundingBox>& gt,
                              double dp_threshold, double op_iou) {
    if (pred.size() != gt.size() || pred.empty())
        throw InputError("compute_metrics: prediction/ground-truth lengths differ or are empty");
    const std::size_t n = pred.size();
    std::vector<double> cle(n), overlap(n);
    double cle_sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double dx = pred[t].cx() - gt[t].cx();
        const double dy = pred[t].cy() - gt[t].cy();
        cle[t] = std::hypot(dx, dy);
        overlap[t] = iou(pred[t], gt[t]);
        cle_sum += cle[t];
    }

    MetricsReport r;
    r.dp_threshold = dp_threshold;
    r.op_iou = op_iou;
    r.mean_cle = cle_sum / static_cast<double>(n);

    auto frac_cle_within = [&](double thr) {
        std::size_t c = 0;
        for (double v : cle)
            if (v <= thr) ++c;
        return static_cast<double>(c) / static_cast<double>(n);
    };
    auto frac_iou_at_least = [&](double thr) {
        std::size_t c = 0;
        for (double v : overlap)
            if (v >= thr) ++c;
        return static_cast<double>(c) / static_cast<double>(n);
    };

    r.dp_at_threshold = frac_cle_within(dp_threshold);
    r.op_at_iou = frac_iou_at_least(op_iou);

    for (int thr = 0; thr <= 50; ++thr)
        r.precision_curve.emplace_back(thr, frac_cle_within(thr));
    double auc_sum = 0.0;
    for (int s = 0; s <= 20; ++s) {
        const double thr = s * 0.05;
        const double f = frac_iou_at_least(thr);
        r.success_curve.emplace_back(thr, f);
        auc_sum += f;
    }
    r.auc = auc_sum / 21.0;
    return r;
}

} // namespace gfs
