#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gfs/tracker.hpp"

namespace gfs {

enum class ObjectKind { gaussian_blob, textured_square };
enum class MotionKind { linear, sinusoidal };

// Desk-scale sequence generator with exact ground truth. When informative /
// noise channel counts are set, per-frame feature tensors are produced as
// well: a window around the previous frame's ground-truth centre where the
// informative channels carry a noisy, shifted per-channel template of the
// object and the noise channels are pure i.i.d. noise redrawn every frame.
struct SyntheticSpec {
    int frame_width = 200;
    int frame_height = 200;
    int frame_count = 60;
    ObjectKind object = ObjectKind::gaussian_blob;
    double object_size = 24.0;
    MotionKind motion = MotionKind::linear;
    double velocity_x = 1.0;
    double velocity_y = 0.0;
    double amplitude = 0.0;  // sinusoidal x-amplitude, pixels
    double period = 40.0;    // sinusoidal period, frames
    double start_x = 0.0;    // start centre (0 -> auto placement)
    double start_y = 0.0;
    double noise_sigma = 0.0; // 8-bit pixel noise
    int informative_channels = 0;
    int noise_channels = 0;
    int feature_grid = 16;
    double feature_window_scale = 2.5; // window side = scale * object_size
    double feature_noise = 0.2;        // noise on informative channels
    double noise_channel_sigma = 1.0;  // i.i.d. level of noise channels
    std::uint64_t seed = 1;

    void validate() const;
};

struct SyntheticSequence {
    std::vector<Image> frames;
    std::vector<RealTensor3> feature_frames; // empty unless channels requested
    std::vector<BoundingBox> gt;
    double external_cell_px = 0.0;
};

SyntheticSequence generate_synthetic(const SyntheticSpec& spec);

// In-memory adapters for the tracking loop.
LoadedSequence as_loaded(const SyntheticSequence& seq, bool use_external_features);

// Writes frames (PGM), groundtruth_rect.txt (1-indexed) and any feature
// tensors (FTEN) into dir, creating it if needed.
void write_synthetic(const std::string& dir, const SyntheticSequence& seq);

// Deterministic normal sampler (Box-Muller over the given engine) so that
// generated sequences are bit-identical for a fixed seed.
double gaussian_sample(std::mt19937_64& rng);

} // namespace gfs
