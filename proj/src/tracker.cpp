#include "gfs/tracker.hpp"

#include <algorithm>
#include <cmath>

namespace gfs {
namespace {

// Features plus the block layout for one crop of the frame at the given scale.
struct Extracted {
    RealTensor3 tensor;
    std::vector<ChannelRange> blocks;
    double crop_side = 0; // pixels in frame coordinates
};

double base_crop_side(const BoundingBox& box, double padding) {
    return std::max(box.w, box.h) * (1.0 + padding);
}

Extracted extract_at(const Image& frame, const BoundingBox& box, double scale,
                     const TrackerConfig& cfg) {
    Extracted out;
    out.crop_side = base_crop_side(box, cfg.padding) * scale;
    const Image patch = crop_resample(frame, box.cx(), box.cy(), out.crop_side, cfg.model_side);
    std::vector<FeatureBlock> blocks = extract(patch, cfg.features);
    out.tensor = concat_blocks(blocks);
    out.blocks.reserve(blocks.size());
    for (const FeatureBlock& b : blocks) out.blocks.push_back(b.channel_range);
    return out;
}

// Circular peak index -> signed displacement in cells.
int signed_offset(int i, int n) { return i > n / 2 ? i - n : i; }

ResponseMap response_for(const RealTensor3& features, const FilterTensor& filter) {
    ResponseMap r;
    r.values = circ_correlate(features, filter);
    const int n = r.values.side();
    r.peak_value = r.values.at(0, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (r.values.at(i, j) > r.peak_value) {
                r.peak_value = r.values.at(i, j);
                r.peak_i = i;
                r.peak_j = j;
            }
    return r;
}

BoundingBox clip_to_frame(const BoundingBox& box, const Image& frame) {
    const double x0 = std::max(box.x, 0.0);
    const double y0 = std::max(box.y, 0.0);
    const double x1 = std::min(box.x + box.w, static_cast<double>(frame.width));
    const double y1 = std::min(box.y + box.h, static_cast<double>(frame.height));
    return {x0, y0, x1 - x0, y1 - y0};
}

void run_learn(TrackState& st, const RealTensor3& x) {
    const GfsSolution sol = admm_solve(x, st.label, st.prev_filter, st.cfg.reg, st.cfg.sel,
                                       st.cfg.admm, st.blocks);
    st.model_filter = model_update(sol.filter, st.model_filter, st.cfg.alpha);
    st.prev_filter = sol.filter;
    st.last_mask = sol.mask;
    if (st.cfg.record_history) st.filter_history.push_back(sol.filter.data());
}

} // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::baseline: return "baseline";
        case Variant::ss: return "ss";
        case Variant::cs: return "cs";
        case Variant::lr: return "lr";
        case Variant::all: return "all";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "baseline") return Variant::baseline;
    if (name == "ss") return Variant::ss;
    if (name == "cs") return Variant::cs;
    if (name == "lr") return Variant::lr;
    if (name == "all") return Variant::all;
    throw ConfigError("unknown variant: " + name);
}

void TrackerConfig::validate() const {
    features.validate();
    reg.validate();
    sel.validate();
    admm.validate();
    if (alpha < 0 || alpha > 1) throw ConfigError("TrackerConfig: alpha must lie in [0, 1]");
    if (padding <= 0) throw ConfigError("TrackerConfig: padding must be positive");
    if (sigma_factor <= 0) throw ConfigError("TrackerConfig: sigma_factor must be positive");
    if (model_side < 2) throw ConfigError("TrackerConfig: model_side must be >= 2");
    if (model_side % features.cell_size != 0)
        throw ConfigError("TrackerConfig: cell_size must divide model_side");
    if (external_cell_px <= 0) throw ConfigError("TrackerConfig: external_cell_px must be positive");
    if (std::find(scale_factors.begin(), scale_factors.end(), 1.0) == scale_factors.end())
        throw ConfigError("TrackerConfig: scale_factors must contain 1.0");
    for (double s : scale_factors)
        if (s <= 0) throw ConfigError("TrackerConfig: scale factors must be positive");
}

TrackerConfig apply_variant(const TrackerConfig& cfg) {
    TrackerConfig c = cfg;
    switch (c.variant) {
        case Variant::baseline:
            c.reg.lambda_spatial = c.reg.lambda_channel = c.reg.lambda_temporal = 0.0;
            c.sel.channel_ratio = c.sel.spatial_ratio = 1.0;
            break;
        case Variant::ss:
            c.reg.lambda_channel = c.reg.lambda_temporal = 0.0;
            c.sel.channel_ratio = 1.0;
            break;
        case Variant::cs:
            c.reg.lambda_spatial = c.reg.lambda_temporal = 0.0;
            c.sel.spatial_ratio = 1.0;
            break;
        case Variant::lr:
            c.reg.lambda_spatial = c.reg.lambda_channel = 0.0;
            c.sel.channel_ratio = c.sel.spatial_ratio = 1.0;
            break;
        case Variant::all:
            break;
    }
    return c;
}

TrackState init(const Frame& frame, const BoundingBox& box_in, const TrackerConfig& cfg_in) {
    TrackState st;
    st.cfg = apply_variant(cfg_in);
    st.cfg.validate();

    RealTensor3 x;
    double target_w_cells = 0, target_h_cells = 0;
    if (frame.external) {
        st.box = box_in;
        if (st.box.w < 2 || st.box.h < 2) throw InputError("init: degenerate target box");
        x = frame.features;
        st.blocks = {{0, x.channels()}};
        target_w_cells = st.box.w / st.cfg.external_cell_px;
        target_h_cells = st.box.h / st.cfg.external_cell_px;
    } else {
        st.box = clip_to_frame(box_in, frame.image);
        if (st.box.w < 2 || st.box.h < 2) throw InputError("init: degenerate target box");
        Extracted e = extract_at(frame.image, st.box, 1.0, st.cfg);
        x = std::move(e.tensor);
        st.blocks = std::move(e.blocks);
        const double cells_per_px = st.cfg.model_side / (e.crop_side * st.cfg.features.cell_size);
        target_w_cells = st.box.w * cells_per_px;
        target_h_cells = st.box.h * cells_per_px;
    }
    st.label = gaussian_label(x.grid(), st.cfg.sigma_factor, target_w_cells, target_h_cells);
    st.model_filter = RealTensor3(x.side(), x.channels(), 0.0);
    st.prev_filter = RealTensor3(x.side(), x.channels(), 0.0);

    const GfsSolution sol = admm_solve(x, st.label, st.prev_filter, st.cfg.reg, st.cfg.sel,
                                       st.cfg.admm, st.blocks);
    st.model_filter = sol.filter; // no blending on the first frame
    st.prev_filter = sol.filter;
    st.last_mask = sol.mask;
    st.last_peak = response_for(x, st.model_filter).peak_value;
    if (st.cfg.record_history) st.filter_history.push_back(sol.filter.data());
    st.frame_index = 1;
    return st;
}

std::pair<BoundingBox, ResponseMap> detect(TrackState& st, const Frame& frame) {
    if (frame.external) {
        ResponseMap best = response_for(frame.features, st.model_filter);
        best.scale_index = static_cast<int>(
            std::find(st.cfg.scale_factors.begin(), st.cfg.scale_factors.end(), 1.0) -
            st.cfg.scale_factors.begin());
        const int n = frame.features.side();
        const int di = signed_offset(best.peak_i, n);
        const int dj = signed_offset(best.peak_j, n);
        st.box = BoundingBox::from_center(st.box.cx() + dj * st.cfg.external_cell_px,
                                          st.box.cy() + di * st.cfg.external_cell_px,
                                          st.box.w, st.box.h);
        st.pending_features = circular_shift(frame.features, -di, -dj);
        st.has_pending = true;
        st.last_peak = best.peak_value;
        return {st.box, best};
    }

    ResponseMap best;
    double best_crop_side = 0;
    bool first = true;
    for (std::size_t s = 0; s < st.cfg.scale_factors.size(); ++s) {
        Extracted e = extract_at(frame.image, st.box, st.cfg.scale_factors[s], st.cfg);
        ResponseMap r = response_for(e.tensor, st.model_filter);
        r.scale_index = static_cast<int>(s);
        if (first || r.peak_value > best.peak_value) {
            best = std::move(r);
            best_crop_side = e.crop_side;
            first = false;
        }
    }
    const double scale = st.cfg.scale_factors[best.scale_index];
    const int n = best.values.side();
    const int di = signed_offset(best.peak_i, n);
    const int dj = signed_offset(best.peak_j, n);
    const double px_per_cell = best_crop_side / st.cfg.model_side * st.cfg.features.cell_size;
    st.box = BoundingBox::from_center(st.box.cx() + dj * px_per_cell,
                                      st.box.cy() + di * px_per_cell,
                                      st.box.w * scale, st.box.h * scale);
    st.last_peak = best.peak_value;
    return {st.box, best};
}

void learn(TrackState& st, const Frame& frame) {
    if (frame.external) {
        if (!st.has_pending)
            throw InputError("learn: detect must run before learn on external frames");
        run_learn(st, st.pending_features);
        st.has_pending = false;
    } else {
        Extracted e = extract_at(frame.image, st.box, 1.0, st.cfg);
        run_learn(st, e.tensor);
    }
    st.frame_index += 1;
}

TrackResult track_sequence(const LoadedSequence& seq, const BoundingBox& init_box,
                           const TrackerConfig& cfg) {
    if (seq.frames.empty()) throw InputError("track_sequence: empty sequence");
    TrackerConfig effective = cfg;
    if (seq.external_cell_px > 0) effective.external_cell_px = seq.external_cell_px;

    TrackState st = init(seq.frames.front(), init_box, effective);
    TrackResult out;
    out.grid_side = st.last_mask.side;
    out.boxes.push_back(init_box); // frame 1 echoes the initialisation box
    out.peaks.push_back(st.last_peak);
    out.channel_masks.push_back(st.last_mask.channel_keep);
    out.spatial_masks.push_back(st.last_mask.spatial_keep);

    for (std::size_t t = 1; t < seq.frames.size(); ++t) {
        auto [box, resp] = detect(st, seq.frames[t]);
        learn(st, seq.frames[t]);
        out.boxes.push_back(box);
        out.peaks.push_back(resp.peak_value);
        out.channel_masks.push_back(st.last_mask.channel_keep);
        out.spatial_masks.push_back(st.last_mask.spatial_keep);
    }
    out.filter_history = st.filter_history;
    out.final_learned_filter = st.prev_filter;
    return out;
}

} // namespace gfs
