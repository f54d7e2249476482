#pragma once

#include <cstdint>
#include <utility>

#include "deblur/image.hpp"

namespace deblur {

/// Out-of-focus blur kernel: the normalized indicator of a disk, stored in
/// wraparound layout (center at pixel (0,0)) so its DFT carries no phase ramp.
class Psf {
public:
    /// Wrap an arbitrary kernel already in wraparound layout. Samples must be
    /// nonnegative and sum to 1 within 1e-9.
    static Psf from_kernel(Image kernel, double radius);

    const Image& image() const noexcept { return image_; }
    double radius() const noexcept { return radius_; }
    int center_row() const noexcept { return center_row_; }
    int center_col() const noexcept { return center_col_; }

private:
    friend Psf disk_psf(int rows, int cols, double radius);
    Psf(Image image, double radius, int center_row, int center_col)
        : image_(std::move(image)), radius_(radius),
          center_row_(center_row), center_col_(center_col) {}

    Image image_;
    double radius_ = 0.0;
    int center_row_ = 0;
    int center_col_ = 0;
};

/// Build the disk PSF of the given radius: indicator of
/// (x-k)^2 + (y-l)^2 <= r^2 around the geometric center
/// (k,l) = (rows/2, cols/2), divided by its lattice-point count, then
/// circular-shifted so the center sits at (0,0).
/// Throws std::invalid_argument when the disk diameter exceeds
/// min(rows, cols).
Psf disk_psf(int rows, int cols, double radius);

/// circular_convolve(f, psf.image()). Mean intensity is preserved because the
/// kernel sums to 1.
Image blur(const Image& f, const Psf& psf);

/// Bookkeeping for one realized noise field.
struct NoiseRealization {
    double sigma = 0.0;          // per-sample standard deviation
    std::uint64_t seed = 0;
    double realized_norm = 0.0;  // Frobenius norm of the added field
    double snr_db = 0.0;
};

/// Add i.i.d. zero-mean Gaussian noise at the requested SNR, defined on the
/// signal variance: sigma = sqrt(var(g) / 10^(snr_db/10)). snr_db = +infinity
/// is the "no noise" sentinel. Deterministic for a fixed seed (splitmix64 +
/// Box-Muller). Throws std::invalid_argument when g is constant (variance
/// zero, SNR undefined) and snr_db is finite.
std::pair<Image, NoiseRealization> add_gaussian_noise(const Image& g, double snr_db,
                                                      std::uint64_t seed);

namespace detail {

/// splitmix64: the 64-bit generator the noise stream is built on.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() noexcept {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// Standard-normal stream: Box-Muller over splitmix64 uniforms.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_{seed} {}
    double next() noexcept;

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace detail

}  // namespace deblur
