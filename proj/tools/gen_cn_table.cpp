// Writes the built-in colour-name lookup table (32x32x32 RGB bins, 11
// float32 probabilities per bin, r-major index order) to a file usable via
// the `cn_table` config key.
#include <cstdio>

#include "gfs/features.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: gen_cn_table <output-file>\n");
        return 2;
    }
    try {
        gfs::ColourNameTable::builtin().save(argv[1]);
    } catch (const gfs::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
