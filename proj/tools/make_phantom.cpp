// deblur-phantom: write the deterministic synthetic test scene as a PGM, for
// running the experiment pipeline without external image assets.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "deblur/io.hpp"
#include "deblur/phantom.hpp"

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: deblur-phantom <rows> <cols> <out.pgm>\n");
        return 2;
    }
    try {
        int rows = std::stoi(argv[1]);
        int cols = std::stoi(argv[2]);
        deblur::save_pgm(argv[3], deblur::make_phantom(rows, cols));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "deblur-phantom: %s\n", e.what());
        return 1;
    }
    return 0;
}
