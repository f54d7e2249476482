#pragma once

#include "deblur/image.hpp"

namespace deblur {

/// Deterministic synthetic grayscale scene in [0, 255]: smooth illumination
/// gradient, overlapping disks and bars of different intensities, and mild
/// sinusoidal texture. Used as the reference "natural" test image wherever
/// the experiments need ground truth.
Image make_phantom(int rows, int cols);

}  // namespace deblur
