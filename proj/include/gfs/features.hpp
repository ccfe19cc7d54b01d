#pragma once

#include <array>
#include <string>
#include <vector>

#include "gfs/image.hpp"
#include "gfs/solver.hpp"
#include "gfs/tensor.hpp"

namespace gfs {

// A patch is just a (square) crop of a frame.
using ImagePatch = Image;

enum class FeatureType { intensity, gradient_hist, colour_names, external };

const char* feature_type_name(FeatureType t);
FeatureType feature_type_from_name(const std::string& name);

struct FeatureSpec {
    std::vector<FeatureType> feature_types{FeatureType::intensity, FeatureType::gradient_hist};
    int cell_size = 4;
    int orientation_bins = 9;
    bool cosine_window = true;
    std::string cn_table_path; // empty -> built-in table

    void validate() const {
        if (feature_types.empty()) throw ConfigError("FeatureSpec: at least one feature type required");
        if (cell_size < 1) throw ConfigError("FeatureSpec: cell_size must be positive");
        if (orientation_bins < 1) throw ConfigError("FeatureSpec: orientation_bins must be positive");
    }
};

struct FeatureBlock {
    RealTensor3 tensor;
    FeatureType type_tag = FeatureType::intensity;
    ChannelRange channel_range;
};

// RGB -> colour-name probability lookup over a 32x32x32 quantisation of RGB.
// Index order is r-major: ((r>>3)*32 + (g>>3))*32 + (b>>3), 11 float32 each.
class ColourNameTable {
public:
    static constexpr int kNames = 11;
    static const std::array<const char*, kNames>& names();

    // Deterministic table built from prototype colours (softmax over negative
    // squared RGB distances). Grayscale inputs take the achromatic fallback.
    static const ColourNameTable& builtin();
    static ColourNameTable load(const std::string& path);
    void save(const std::string& path) const;

    const float* lookup(std::uint8_t r, std::uint8_t g, std::uint8_t b) const;
    // Distribution over {black, grey, white} for a grayscale level; all
    // chromatic names get probability zero.
    static std::array<double, kNames> grayscale_fallback(std::uint8_t g);

private:
    std::vector<float> probs_; // 32768 * 11
    friend ColourNameTable build_builtin_table();
};

// Hann taper of length n; endpoints are exactly zero.
std::vector<double> hann_window(int n);

// Converts a patch into one block per requested feature type, in spec order,
// at grid side N = patch side / cell_size. External features must come in
// through import_features instead.
std::vector<FeatureBlock> extract(const ImagePatch& patch, const FeatureSpec& spec);

// FTEN tensor file: magic "FTEN" | u16 version=1 | u32 N | u32 N | u32 C |
// N*N*C float32, row major, channel slowest. All fields little endian.
FeatureBlock import_features(const std::string& path, Grid2D expected_grid);
void export_features(const std::string& path, const RealTensor3& tensor);

// Channel-axis concatenation in block order; updates each block's channel_range
// to the concatenated coordinates.
RealTensor3 concat_blocks(std::vector<FeatureBlock>& blocks);

} // namespace gfs
