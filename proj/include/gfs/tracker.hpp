#pragma once

#include <string>
#include <vector>

#include "gfs/features.hpp"
#include "gfs/image.hpp"
#include "gfs/solver.hpp"

namespace gfs {

struct BoundingBox {
    double x = 0, y = 0; // top-left, pixels
    double w = 0, h = 0;

    double cx() const { return x + w / 2.0; }
    double cy() const { return y + h / 2.0; }
    double area() const { return w * h; }
    static BoundingBox from_center(double cx, double cy, double w, double h) {
        return {cx - w / 2.0, cy - h / 2.0, w, h};
    }
    bool operator==(const BoundingBox&) const = default;
};

enum class Variant { baseline, ss, cs, lr, all };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct TrackerConfig {
    FeatureSpec features;
    RegularisationConfig reg;
    SelectionConfig sel;
    AdmmConfig admm;
    double alpha = 0.6;
    double padding = 1.5;
    double sigma_factor = 0.1;
    std::vector<double> scale_factors{0.98, 1.0, 1.02};
    Variant variant = Variant::all;
    int model_side = 64;             // resampled crop side for pixel features
    double external_cell_px = 4.0;   // cells -> pixels for imported feature grids
    bool record_history = false;

    void validate() const;
};

// Zeroes the lambdas/ratios the chosen variant leaves inactive.
TrackerConfig apply_variant(const TrackerConfig& cfg);

// One input frame: either pixels or an imported feature tensor.
struct Frame {
    Image image;
    RealTensor3 features;
    bool external = false;
};

struct ResponseMap {
    RealMatrix values;
    int peak_i = 0, peak_j = 0;
    double peak_value = 0.0;
    int scale_index = 0;
};

struct TrackState {
    TrackerConfig cfg; // variant already applied
    BoundingBox box;
    FilterTensor model_filter;
    FilterTensor prev_filter; // previously *learned* filter (pre-blend)
    int frame_index = 1;
    ResponseLabel label;
    std::vector<ChannelRange> blocks;
    SelectionMask last_mask;
    double last_peak = 0.0;
    RealTensor3 pending_features; // external mode: re-centred features for learn()
    bool has_pending = false;
    std::vector<std::vector<double>> filter_history; // vectorised learned filters
};

TrackState init(const Frame& frame, const BoundingBox& box, const TrackerConfig& cfg);
std::pair<BoundingBox, ResponseMap> detect(TrackState& state, const Frame& frame);
void learn(TrackState& state, const Frame& frame);

struct LoadedSequence {
    std::string name;
    std::vector<Frame> frames;
    std::vector<BoundingBox> gt; // may be empty for bare runs
    double external_cell_px = 0; // 0 -> not externally featured
};

struct TrackResult {
    std::vector<BoundingBox> boxes;
    std::vector<double> peaks;
    std::vector<std::vector<bool>> channel_masks;
    std::vector<std::vector<bool>> spatial_masks;
    int grid_side = 0;
    std::vector<std::vector<double>> filter_history;
    FilterTensor final_learned_filter;
};

// Frame 1 echoes the initial box exactly; every later frame runs detect + learn.
TrackResult track_sequence(const LoadedSequence& seq, const BoundingBox& init_box,
                           const TrackerConfig& cfg);

} // namespace gfs
