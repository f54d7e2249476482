#pragma once

#include "deblur/image.hpp"

namespace deblur {

/// Unscaled forward 2-D DFT:
///   F(u,v) = sum_x sum_y f(x,y) * exp(-2*pi*i*(u*x/M + v*y/N)).
Spectrum dft2(const Image& img);

/// Inverse 2-D DFT with the 1/(M*N) factor. The imaginary part of the result
/// is discarded; its max magnitude is reported through `max_imag_residue`
/// when non-null so callers can check conjugate symmetry held.
Image idft2(const Spectrum& spec, double* max_imag_residue = nullptr);

/// sqrt(sum |F(u,v)|^2) / sqrt(M*N). By Parseval this equals
/// frobenius_norm(idft2(spec)).
double spectral_norm(const Spectrum& spec);

/// Periodic (circular) convolution via pointwise spectral product.
/// Shapes must match.
Image circular_convolve(const Image& f, const Image& k);

/// out(r,c) = in((r-dr) mod rows, (c-dc) mod cols).
Image circular_shift(const Image& img, int dr, int dc);

}  // namespace deblur
