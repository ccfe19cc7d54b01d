#pragma once

#include <string>
#include <vector>

#include "gfs/tracker.hpp"

namespace gfs {

// Parses one `x,y,w,h` box per line (comma, tab or space separated). The file
// stores 1-indexed pixel coordinates; the returned boxes are 0-indexed.
std::vector<BoundingBox> parse_groundtruth(const std::string& path);

// Loads an on-disk sequence directory: zero-padded numbered frames (binary
// PGM/PPM, or FTEN tensors for externally computed features) next to
// `groundtruth_rect.txt`. Frames are decoded in filename order.
LoadedSequence load_sequence(const std::string& dir);

} // namespace gfs
