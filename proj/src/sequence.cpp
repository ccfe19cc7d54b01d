#include "gfs/sequence.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace gfs {
namespace {

// Peeks N from an FTEN header so the first frame can pin the sequence grid.
int read_ften_side(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open feature file: " + path);
    unsigned char hdr[10];
    in.read(reinterpret_cast<char*>(hdr), 10);
    if (in.gcount() != 10) throw FormatError("truncated FTEN header: " + path);
    if (hdr[0] != 'F' || hdr[1] != 'T' || hdr[2] != 'E' || hdr[3] != 'N')
        throw FormatError("bad FTEN magic: " + path);
    int n = 0;
    for (int i = 0; i < 4; ++i) n |= static_cast<int>(hdr[6 + i]) << (8 * i);
    if (n < 2) throw FormatError("bad FTEN dimensions: " + path);
    return n;
}

} // namespace

std::vector<BoundingBox> parse_groundtruth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ground-truth file: " + path);
    std::vector<BoundingBox> boxes;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        for (char& c : line)
            if (c == ',' || c == '\t') c = ' ';
        std::istringstream ss(line);
        double x, y, w, h;
        if (!(ss >> x >> y >> w >> h))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected `x,y,w,h`");
        // 1-indexed pixel coordinates on disk -> 0-indexed in memory
        boxes.push_back({x - 1.0, y - 1.0, w, h});
    }
    return boxes;
}

LoadedSequence load_sequence(const std::string& dir) {
    const fs::path root(dir);
    if (!fs::is_directory(root)) throw IoError("sequence directory not found: " + dir);

    std::vector<std::string> image_files, feature_files;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".pgm" || ext == ".ppm")
            image_files.push_back(entry.path().string());
        else if (ext == ".ften")
            feature_files.push_back(entry.path().string());
    }
    std::sort(image_files.begin(), image_files.end());
    std::sort(feature_files.begin(), feature_files.end());

    LoadedSequence seq;
    seq.name = root.filename().string();
    const bool external = !feature_files.empty();
    const std::vector<std::string>& files = external ? feature_files : image_files;
    if (files.empty()) throw IoError("no frames (PGM/PPM or FTEN) in: " + dir);

    seq.gt = parse_groundtruth((root / "groundtruth_rect.txt").string());
    if (seq.gt.size() != files.size())
        throw ConsistencyError(dir + ": " + std::to_string(files.size()) + " frames but " +
                               std::to_string(seq.gt.size()) + " ground-truth lines");

    std::optional<Grid2D> grid;
    for (const std::string& f : files) {
        Frame frame;
        if (external) {
            if (!grid) grid = Grid2D(read_ften_side(f));
            FeatureBlock blk = import_features(f, *grid);
            frame.features = std::move(blk.tensor);
            frame.external = true;
        } else {
            try {
                frame.image = load_image(f);
            } catch (const FormatError& e) {
                throw IoError(std::string("frame decode failed: ") + f + " (" + e.what() + ")");
            }
        }
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

} // namespace gfs
