#include "gfs/features.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace gfs {
namespace {

constexpr double kPi = std::numbers::pi;

void write_u16le(std::ostream& out, std::uint16_t v) {
    const unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                                static_cast<unsigned char>(v >> 8)};
    out.write(reinterpret_cast<const char*>(b), 2);
}

void write_u32le(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_f32le(std::ostream& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    write_u32le(out, bits);
}

bool read_bytes(std::istream& in, unsigned char* dst, std::size_t n) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    return static_cast<std::size_t>(in.gcount()) == n;
}

bool read_u16le(std::istream& in, std::uint16_t& v) {
    unsigned char b[2];
    if (!read_bytes(in, b, 2)) return false;
    v = static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    return true;
}

bool read_u32le(std::istream& in, std::uint32_t& v) {
    unsigned char b[4];
    if (!read_bytes(in, b, 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return true;
}

bool read_f32le(std::istream& in, float& v) {
    std::uint32_t bits;
    if (!read_u32le(in, bits)) return false;
    std::memcpy(&v, &bits, 4);
    return true;
}

struct Prototype {
    const char* name;
    double r, g, b;
};

// Prototype colours anchoring the built-in lookup; probabilities are a softmax
// over negative squared RGB distances with bandwidth tau.
constexpr std::array<Prototype, ColourNameTable::kNames> kPrototypes = {{
    {"black", 0, 0, 0},
    {"blue", 0, 0, 255},
    {"brown", 139, 69, 19},
    {"grey", 128, 128, 128},
    {"green", 0, 128, 0},
    {"orange", 255, 165, 0},
    {"pink", 255, 192, 203},
    {"purple", 128, 0, 128},
    {"red", 255, 0, 0},
    {"white", 255, 255, 255},
    {"yellow", 255, 255, 0},
}};

constexpr double kCnTau = 60.0;

RealTensor3 intensity_block(const ImagePatch& patch, int cell) {
    const int n = patch.width / cell;
    RealTensor3 t(n, 1, 0.0);
    for (int y = 0; y < patch.height; ++y)
        for (int x = 0; x < patch.width; ++x)
            t.at(y / cell, x / cell, 0) += patch.gray(y, x);
    const double inv = 1.0 / (static_cast<double>(cell) * cell);
    for (double& v : t.data()) v = v * inv - 0.5;
    return t;
}

RealTensor3 gradient_block(const ImagePatch& patch, int cell, int bins) {
    const int n = patch.width / cell;
    const int w = patch.width;
    const int h = patch.height;
    RealTensor3 t(n, bins, 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = patch.gray(y, std::min(x + 1, w - 1)) - patch.gray(y, std::max(x - 1, 0));
            const double gy = patch.gray(std::min(y + 1, h - 1), x) - patch.gray(std::max(y - 1, 0), x);
            const double mag = std::hypot(gx, gy);
            if (mag == 0.0) continue;
            double theta = std::atan2(gy, gx); // unsigned orientation in [0, pi)
            if (theta < 0) theta += kPi;
            if (theta >= kPi) theta -= kPi;
            const double pos = theta / kPi * bins;
            int b0 = static_cast<int>(pos);
            if (b0 >= bins) b0 = bins - 1;
            const double frac = pos - b0;
            const int b1 = (b0 + 1) % bins;
            t.at(y / cell, x / cell, b0) += (1.0 - frac) * mag;
            t.at(y / cell, x / cell, b1) += frac * mag;
        }
    }
    // per-cell L2 normalisation
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < bins; ++k) s += t.at(i, j, k) * t.at(i, j, k);
            if (s == 0.0) continue;
            const double inv = 1.0 / std::sqrt(s + 1e-12);
            for (int k = 0; k < bins; ++k) t.at(i, j, k) *= inv;
        }
    return t;
}

RealTensor3 colour_block(const ImagePatch& patch, int cell, const ColourNameTable& table) {
    const int n = patch.width / cell;
    RealTensor3 t(n, ColourNameTable::kNames, 0.0);
    for (int y = 0; y < patch.height; ++y)
        for (int x = 0; x < patch.width; ++x) {
            const int ci = y / cell;
            const int cj = x / cell;
            if (patch.channels == 3) {
                const float* p = table.lookup(patch.at(y, x, 0), patch.at(y, x, 1), patch.at(y, x, 2));
                for (int k = 0; k < ColourNameTable::kNames; ++k) t.at(ci, cj, k) += p[k];
            } else {
                const auto p = ColourNameTable::grayscale_fallback(patch.at(y, x));
                for (int k = 0; k < ColourNameTable::kNames; ++k) t.at(ci, cj, k) += p[k];
            }
        }
    const double inv = 1.0 / (static_cast<double>(cell) * cell);
    for (double& v : t.data()) v *= inv;
    return t;
}

} // namespace

const char* feature_type_name(FeatureType t) {
    switch (t) {
        case FeatureType::intensity: return "intensity";
        case FeatureType::gradient_hist: return "gradient_hist";
        case FeatureType::colour_names: return "colour_names";
        case FeatureType::external: return "external";
    }
    return "?";
}

FeatureType feature_type_from_name(const std::string& name) {
    if (name == "intensity") return FeatureType::intensity;
    if (name == "gradient_hist") return FeatureType::gradient_hist;
    if (name == "colour_names") return FeatureType::colour_names;
    if (name == "external") return FeatureType::external;
    throw ConfigError("unknown feature type: " + name);
}

const std::array<const char*, ColourNameTable::kNames>& ColourNameTable::names() {
    static const std::array<const char*, kNames> n = {
        kPrototypes[0].name, kPrototypes[1].name, kPrototypes[2].name, kPrototypes[3].name,
        kPrototypes[4].name, kPrototypes[5].name, kPrototypes[6].name, kPrototypes[7].name,
        kPrototypes[8].name, kPrototypes[9].name, kPrototypes[10].name};
    return n;
}

ColourNameTable build_builtin_table() {
    ColourNameTable table;
    table.probs_.resize(32768 * ColourNameTable::kNames);
    std::size_t idx = 0;
    for (int rq = 0; rq < 32; ++rq)
        for (int gq = 0; gq < 32; ++gq)
            for (int bq = 0; bq < 32; ++bq) {
                const double r = rq * 8 + 3.5;
                const double g = gq * 8 + 3.5;
                const double b = bq * 8 + 3.5;
                std::array<double, ColourNameTable::kNames> w{};
                double total = 0.0;
                for (int k = 0; k < ColourNameTable::kNames; ++k) {
                    const double dr = r - kPrototypes[k].r;
                    const double dg = g - kPrototypes[k].g;
                    const double db = b - kPrototypes[k].b;
                    w[k] = std::exp(-(dr * dr + dg * dg + db * db) / (2.0 * kCnTau * kCnTau));
                    total += w[k];
                }
                for (int k = 0; k < ColourNameTable::kNames; ++k)
                    table.probs_[idx++] = static_cast<float>(w[k] / total);
            }
    return table;
}

const ColourNameTable& ColourNameTable::builtin() {
    static const ColourNameTable table = build_builtin_table();
    return table;
}

ColourNameTable ColourNameTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open colour-name table: " + path);
    ColourNameTable table;
    table.probs_.resize(32768 * kNames);
    for (float& v : table.probs_) {
        if (!read_f32le(in, v)) throw FormatError("truncated colour-name table: " + path);
    }
    return table;
}

void ColourNameTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write colour-name table: " + path);
    for (float v : probs_) write_f32le(out, v);
    if (!out) throw IoError("write failed: " + path);
}

const float* ColourNameTable::lookup(std::uint8_t r, std::uint8_t g, std::uint8_t b) const {
    const std::size_t idx = ((static_cast<std::size_t>(r >> 3) * 32 + (g >> 3)) * 32 + (b >> 3)) * kNames;
    return probs_.data() + idx;
}

std::array<double, ColourNameTable::kNames> ColourNameTable::grayscale_fallback(std::uint8_t g) {
    // Achromatic names only: black at 0, grey at 127.5, white at 255.
    const int black = 0, grey = 3, white = 9;
    std::array<double, kNames> p{};
    const double centres[3] = {0.0, 127.5, 255.0};
    const int slots[3] = {black, grey, white};
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double d = g - centres[k];
        p[slots[k]] = std::exp(-d * d / (2.0 * kCnTau * kCnTau));
        total += p[slots[k]];
    }
    for (int k = 0; k < 3; ++k) p[slots[k]] /= total;
    return p;
}

std::vector<double> hann_window(int n) {
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * i / (n - 1)));
    return h;
}

std::vector<FeatureBlock> extract(const ImagePatch& patch, const FeatureSpec& spec) {
    spec.validate();
    if (patch.width != patch.height) throw GeometryError("extract: patch must be square");
    if (patch.channels != 1 && patch.channels != 3)
        throw GeometryError("extract: patch must have 1 or 3 channels");
    if (patch.width < spec.cell_size || patch.width % spec.cell_size != 0)
        throw GeometryError("extract: cell_size must divide the patch side");
    const int n = patch.width / spec.cell_size;
    if (n < 2) throw GeometryError("extract: feature grid side must be >= 2");

    const ColourNameTable* cn = nullptr;
    ColourNameTable loaded;
    std::vector<FeatureBlock> blocks;
    int offset = 0;
    for (FeatureType type : spec.feature_types) {
        FeatureBlock blk;
        blk.type_tag = type;
        switch (type) {
            case FeatureType::intensity:
                blk.tensor = intensity_block(patch, spec.cell_size);
                break;
            case FeatureType::gradient_hist:
                blk.tensor = gradient_block(patch, spec.cell_size, spec.orientation_bins);
                break;
            case FeatureType::colour_names:
                if (!cn) {
                    if (spec.cn_table_path.empty()) {
                        cn = &ColourNameTable::builtin();
                    } else {
                        loaded = ColourNameTable::load(spec.cn_table_path);
                        cn = &loaded;
                    }
                }
                blk.tensor = colour_block(patch, spec.cell_size, *cn);
                break;
            case FeatureType::external:
                throw ConfigError("extract: external features must come through import_features");
        }
        blk.channel_range = {offset, offset + blk.tensor.channels()};
        offset = blk.channel_range.end;
        blocks.push_back(std::move(blk));
    }

    if (spec.cosine_window) {
        const std::vector<double> h = hann_window(n);
        for (FeatureBlock& blk : blocks)
            for (int k = 0; k < blk.tensor.channels(); ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        blk.tensor.at(i, j, k) *= h[i] * h[j];
    }
    return blocks;
}

FeatureBlock import_features(const std::string& path, Grid2D expected_grid) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open feature file: " + path);
    unsigned char magic[4];
    if (!read_bytes(in, magic, 4) || std::memcmp(magic, "FTEN", 4) != 0)
        throw FormatError("bad FTEN magic: " + path);
    std::uint16_t version = 0;
    if (!read_u16le(in, version) || version != 1)
        throw FormatError("unsupported FTEN version: " + path);
    std::uint32_t n1 = 0, n2 = 0, c = 0;
    if (!read_u32le(in, n1) || !read_u32le(in, n2) || !read_u32le(in, c))
        throw FormatError("truncated FTEN header: " + path);
    if (n1 != n2 || n1 < 2 || c < 1) throw FormatError("bad FTEN dimensions: " + path);
    if (static_cast<int>(n1) != expected_grid.side())
        throw ShapeError("FTEN grid does not match the expected grid: " + path);
    FeatureBlock blk;
    blk.type_tag = FeatureType::external;
    blk.tensor = RealTensor3(static_cast<int>(n1), static_cast<int>(c));
    for (double& v : blk.tensor.data()) {
        float f = 0.0f;
        if (!read_f32le(in, f)) throw FormatError("truncated FTEN payload: " + path);
        v = f;
    }
    blk.channel_range = {0, blk.tensor.channels()};
    return blk;
}

void export_features(const std::string& path, const RealTensor3& tensor) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write feature file: " + path);
    out.write("FTEN", 4);
    write_u16le(out, 1);
    write_u32le(out, static_cast<std::uint32_t>(tensor.side()));
    write_u32le(out, static_cast<std::uint32_t>(tensor.side()));
    write_u32le(out, static_cast<std::uint32_t>(tensor.channels()));
    for (double v : tensor.data()) write_f32le(out, static_cast<float>(v));
    if (!out) throw IoError("write failed: " + path);
}

RealTensor3 concat_blocks(std::vector<FeatureBlock>& blocks) {
    if (blocks.empty()) throw ShapeError("concat_blocks: no blocks");
    const int n = blocks.front().tensor.side();
    int total = 0;
    for (const FeatureBlock& blk : blocks) {
        if (blk.tensor.side() != n) throw ShapeError("concat_blocks: mixed grid sizes");
        total += blk.tensor.channels();
    }
    RealTensor3 out(n, total);
    int offset = 0;
    for (FeatureBlock& blk : blocks) {
        for (int k = 0; k < blk.tensor.channels(); ++k) {
            auto src = blk.tensor.channel(k);
            auto dst = out.channel(offset + k);
            std::copy(src.begin(), src.end(), dst.begin());
        }
        blk.channel_range = {offset, offset + blk.tensor.channels()};
        offset = blk.channel_range.end;
    }
    return out;
}

} // namespace gfs
