#include "gfs/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "gfs/features.hpp"

namespace fs = std::filesystem;

namespace gfs {
namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0); // [0, 1)
}

struct Path {
    const SyntheticSpec* spec;
    double x0, y0;

    std::pair<double, double> center(int t) const {
        switch (spec->motion) {
            case MotionKind::linear:
                return {x0 + spec->velocity_x * t, y0 + spec->velocity_y * t};
            case MotionKind::sinusoidal:
                return {x0 + spec->amplitude * std::sin(2.0 * std::numbers::pi * t / spec->period),
                        y0 + spec->velocity_y * t};
        }
        return {x0, y0};
    }
};

Path make_path(const SyntheticSpec& spec) {
    Path p{&spec, spec.start_x, spec.start_y};
    const double margin = spec.object_size + 4.0;
    if (p.x0 == 0.0) {
        p.x0 = spec.velocity_x >= 0 ? margin + std::abs(spec.amplitude)
                                    : spec.frame_width - margin - std::abs(spec.amplitude);
    }
    if (p.y0 == 0.0) {
        p.y0 = spec.velocity_y >= 0 ? margin : spec.frame_height - margin;
    }
    for (int t = 0; t < spec.frame_count; ++t) {
        const auto [cx, cy] = p.center(t);
        if (cx < spec.object_size || cx > spec.frame_width - spec.object_size ||
            cy < spec.object_size || cy > spec.frame_height - spec.object_size)
            throw SpecError("generate_synthetic: object path exits the frame at frame " +
                            std::to_string(t));
    }
    return p;
}

// Fixed per-channel template parameters for the informative feature channels.
struct BumpTemplate {
    double amp, off_i, off_j, sigma;
};

} // namespace

double gaussian_sample(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng); // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SyntheticSpec::validate() const {
    if (frame_width < 8 || frame_height < 8) throw SpecError("SyntheticSpec: frame too small");
    if (frame_count < 1) throw SpecError("SyntheticSpec: need at least one frame");
    if (object_size < 4) throw SpecError("SyntheticSpec: object_size must be >= 4");
    if (noise_sigma < 0 || feature_noise < 0 || noise_channel_sigma < 0)
        throw SpecError("SyntheticSpec: noise levels must be nonnegative");
    if (informative_channels < 0 || noise_channels < 0)
        throw SpecError("SyntheticSpec: channel counts must be nonnegative");
    if ((informative_channels > 0 || noise_channels > 0) && feature_grid < 4)
        throw SpecError("SyntheticSpec: feature_grid must be >= 4");
    if (motion == MotionKind::sinusoidal && period <= 0)
        throw SpecError("SyntheticSpec: period must be positive");
    if (feature_window_scale <= 1.0)
        throw SpecError("SyntheticSpec: feature_window_scale must exceed 1");
}

SyntheticSequence generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    const Path path = make_path(spec);
    std::mt19937_64 rng(spec.seed);

    // object texture (textured_square only), drawn once
    const int tex_side = static_cast<int>(std::ceil(spec.object_size)) + 2;
    std::vector<double> texture;
    if (spec.object == ObjectKind::textured_square) {
        texture.resize(static_cast<std::size_t>(tex_side) * tex_side);
        for (double& v : texture) v = 30.0 + 200.0 * uniform01(rng);
    }

    const bool with_features = spec.informative_channels > 0 || spec.noise_channels > 0;
    const int grid = spec.feature_grid;
    const double window_px = spec.feature_window_scale * spec.object_size;
    const double cell_px = window_px / grid;
    std::vector<BumpTemplate> templates;
    if (with_features) {
        const double obj_cells = spec.object_size / cell_px;
        templates.reserve(spec.informative_channels);
        for (int c = 0; c < spec.informative_channels; ++c) {
            BumpTemplate t;
            // strong enough that an informative channel's in-band energy
            // clearly exceeds a unit-noise channel's share of the label band
            t.amp = 3.0 + 1.0 * uniform01(rng);
            t.off_i = (uniform01(rng) - 0.5) * obj_cells / 2.0;
            t.off_j = (uniform01(rng) - 0.5) * obj_cells / 2.0;
            t.sigma = obj_cells * (0.2 + 0.2 * uniform01(rng));
            templates.push_back(t);
        }
    }

    SyntheticSequence out;
    out.external_cell_px = with_features ? cell_px : 0.0;
    const double blob_sigma = spec.object_size / 4.0;

    for (int t = 0; t < spec.frame_count; ++t) {
        const auto [cx, cy] = path.center(t);
        Image frame(spec.frame_width, spec.frame_height, 1);
        for (int y = 0; y < spec.frame_height; ++y) {
            for (int x = 0; x < spec.frame_width; ++x) {
                double v = 40.0;
                if (spec.object == ObjectKind::gaussian_blob) {
                    const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                    v += 190.0 * std::exp(-d2 / (2.0 * blob_sigma * blob_sigma));
                } else {
                    const double u = x - (cx - spec.object_size / 2.0);
                    const double w = y - (cy - spec.object_size / 2.0);
                    if (u >= 0 && u < spec.object_size && w >= 0 && w < spec.object_size) {
                        const int ui = std::min(static_cast<int>(u), tex_side - 2);
                        const int wi = std::min(static_cast<int>(w), tex_side - 2);
                        const double fu = u - ui;
                        const double fw = w - wi;
                        const auto tex = [&](int a, int b) {
                            return texture[static_cast<std::size_t>(b) * tex_side + a];
                        };
                        v = (1 - fw) * ((1 - fu) * tex(ui, wi) + fu * tex(ui + 1, wi)) +
                            fw * ((1 - fu) * tex(ui, wi + 1) + fu * tex(ui + 1, wi + 1));
                    }
                }
                frame.at(y, x) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
            }
        }
        if (spec.noise_sigma > 0) {
            for (auto& px : frame.pixels) {
                const double v = px + spec.noise_sigma * gaussian_sample(rng);
                px = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
            }
        }
        out.frames.push_back(std::move(frame));
        out.gt.push_back(BoundingBox::from_center(cx, cy, spec.object_size, spec.object_size));

        if (with_features) {
            const auto [wcx, wcy] = path.center(std::max(t - 1, 0));
            const double off_i = (cy - wcy) / cell_px; // rows move with y
            const double off_j = (cx - wcx) / cell_px;
            RealTensor3 feat(grid, spec.informative_channels + spec.noise_channels, 0.0);
            for (int c = 0; c < spec.informative_channels; ++c) {
                const BumpTemplate& tpl = templates[c];
                const double pi = grid / 2.0 + off_i + tpl.off_i;
                const double pj = grid / 2.0 + off_j + tpl.off_j;
                for (int i = 0; i < grid; ++i)
                    for (int j = 0; j < grid; ++j) {
                        const double d2 = (i - pi) * (i - pi) + (j - pj) * (j - pj);
                        feat.at(i, j, c) = tpl.amp * std::exp(-d2 / (2.0 * tpl.sigma * tpl.sigma));
                    }
                if (spec.feature_noise > 0)
                    for (int i = 0; i < grid; ++i)
                        for (int j = 0; j < grid; ++j)
                            feat.at(i, j, c) += spec.feature_noise * gaussian_sample(rng);
            }
            for (int c = spec.informative_channels; c < feat.channels(); ++c)
                for (int i = 0; i < grid; ++i)
                    for (int j = 0; j < grid; ++j)
                        feat.at(i, j, c) = spec.noise_channel_sigma * gaussian_sample(rng);
            out.feature_frames.push_back(std::move(feat));
        }
    }
    return out;
}

LoadedSequence as_loaded(const SyntheticSequence& seq, bool use_external_features) {
    LoadedSequence out;
    out.name = "synthetic";
    out.gt = seq.gt;
    if (use_external_features) {
        if (seq.feature_frames.empty())
            throw InputError("as_loaded: no feature frames were generated");
        out.external_cell_px = seq.external_cell_px;
        for (const RealTensor3& f : seq.feature_frames) {
            Frame frame;
            frame.features = f;
            frame.external = true;
            out.frames.push_back(std::move(frame));
        }
    } else {
        for (const Image& img : seq.frames) {
            Frame frame;
            frame.image = img;
            out.frames.push_back(std::move(frame));
        }
    }
    return out;
}

void write_synthetic(const std::string& dir, const SyntheticSequence& seq) {
    fs::create_directories(dir);
    char name[64];
    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
        std::snprintf(name, sizeof(name), "%05zu.pgm", t + 1);
        save_image((fs::path(dir) / name).string(), seq.frames[t]);
    }
    for (std::size_t t = 0; t < seq.feature_frames.size(); ++t) {
        std::snprintf(name, sizeof(name), "feat_%05zu.ften", t + 1);
        export_features((fs::path(dir) / name).string(), seq.feature_frames[t]);
    }
    std::ofstream gt((fs::path(dir) / "groundtruth_rect.txt").string());
    if (!gt) throw IoError("cannot write ground truth in: " + dir);
    for (const BoundingBox& b : seq.gt) {
        char line[160];
        // 1-indexed on disk
        std::snprintf(line, sizeof(line), "%.4f,%.4f,%.4f,%.4f\n", b.x + 1.0, b.y + 1.0, b.w, b.h);
        gt << line;
    }
}

} // namespace gfs
