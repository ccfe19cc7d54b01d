#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfs/errors.hpp"

namespace gfs {

// 8-bit image, interleaved row-major samples; 1 (grayscale) or 3 (RGB) channels.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int w, int h, int c, std::uint8_t fill = 0)
        : width(w), height(h), channels(c),
          pixels(static_cast<std::size_t>(w) * h * c, fill) {}

    std::uint8_t at(int y, int x, int c = 0) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int y, int x, int c = 0) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    // Luminance in [0,1]; channel mean for RGB.
    double gray(int y, int x) const {
        if (channels == 1) return at(y, x) / 255.0;
        return (at(y, x, 0) + at(y, x, 1) + at(y, x, 2)) / (3.0 * 255.0);
    }
};

// Binary PGM (P5) / PPM (P6) with maxval 255. load_image dispatches on the magic.
Image load_image(const std::string& path);
void save_image(const std::string& path, const Image& img);

// Square crop of side `side_px` centred at (cx, cy), bilinearly resampled to
// out_side x out_side. Samples outside the frame replicate the nearest edge.
Image crop_resample(const Image& frame, double cx, double cy, double side_px, int out_side);

} // namespace gfs
