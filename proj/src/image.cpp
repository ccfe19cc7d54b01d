#include "gfs/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace gfs {
namespace {

int read_pnm_token(std::istream& in, const std::string& path) {
    // Skips whitespace and '#' comments between header fields.
    while (true) {
        const int c = in.peek();
        if (c == EOF) throw FormatError("truncated PNM header: " + path);
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else {
            break;
        }
    }
    int value = 0;
    in >> value;
    if (!in) throw FormatError("bad PNM header field: " + path);
    return value;
}

} // namespace

Image load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image: " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '5' && m1 != '6'))
        throw FormatError("unsupported image format (expected binary PGM/PPM): " + path);
    const int channels = m1 == '5' ? 1 : 3;
    const int w = read_pnm_token(in, path);
    const int h = read_pnm_token(in, path);
    const int maxval = read_pnm_token(in, path);
    if (w <= 0 || h <= 0) throw FormatError("bad PNM dimensions: " + path);
    if (maxval != 255) throw FormatError("only maxval 255 PNM supported: " + path);
    in.get(); // single whitespace after maxval
    Image img(w, h, channels);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw FormatError("truncated PNM payload: " + path);
    return img;
}

void save_image(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write image: " + path);
    out << (img.channels == 1 ? "P5" : "P6") << "\n"
        << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError("write failed: " + path);
}

Image crop_resample(const Image& frame, double cx, double cy, double side_px, int out_side) {
    if (side_px <= 0 || out_side < 2) throw GeometryError("crop_resample: bad crop geometry");
    Image out(out_side, out_side, frame.channels);
    const double step = side_px / out_side;
    const double x0 = cx - side_px / 2.0;
    const double y0 = cy - side_px / 2.0;
    auto clamp = [](double v, int hi) { return std::min(std::max(v, 0.0), static_cast<double>(hi)); };
    for (int r = 0; r < out_side; ++r) {
        const double sy = clamp(y0 + (r + 0.5) * step - 0.5, frame.height - 1);
        const int yi = static_cast<int>(sy);
        const int yj = std::min(yi + 1, frame.height - 1);
        const double fy = sy - yi;
        for (int c = 0; c < out_side; ++c) {
            const double sx = clamp(x0 + (c + 0.5) * step - 0.5, frame.width - 1);
            const int xi = static_cast<int>(sx);
            const int xj = std::min(xi + 1, frame.width - 1);
            const double fx = sx - xi;
            for (int ch = 0; ch < frame.channels; ++ch) {
                const double v00 = frame.at(yi, xi, ch);
                const double v01 = frame.at(yi, xj, ch);
                const double v10 = frame.at(yj, xi, ch);
                const double v11 = frame.at(yj, xj, ch);
                const double v = (1 - fy) * ((1 - fx) * v00 + fx * v01) +
                                 fy * ((1 - fx) * v10 + fx * v11);
                out.at(r, c, ch) = static_cast<std::uint8_t>(std::lround(std::min(255.0, std::max(0.0, v))));
            }
        }
    }
    return out;
}

} // namespace gfs
