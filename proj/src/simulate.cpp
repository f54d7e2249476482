#include "deblur/simulate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "deblur/fourier.hpp"

namespace deblur {

Psf Psf::from_kernel(Image kernel, double radius) {
    double sum = 0.0;
    for (double v : kernel.samples()) {
        if (v < 0.0) throw std::invalid_argument("psf kernel has negative samples");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("psf kernel samples must sum to 1, got " +
                                    std::to_string(sum));
    return Psf(std::move(kernel), radius, 0, 0);
}

Psf disk_psf(int rows, int cols, double radius) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("disk_psf: empty grid");
    if (!(radius > 0.0)) throw std::invalid_argument("disk_psf: radius must be positive");
    if (2.0 * radius > std::min(rows, cols))
        throw std::invalid_argument("disk_psf: disk diameter " + std::to_string(2.0 * radius) +
                                    " exceeds grid " + std::to_string(rows) + "x" +
                                    std::to_string(cols));

    const int k = rows / 2, l = cols / 2;
    const double r2 = radius * radius;

    Image disk(rows, cols, 0.0);
    long count = 0;
    for (int x = 0; x < rows; ++x) {
        for (int y = 0; y < cols; ++y) {
            double dx = x - k, dy = y - l;
            if (dx * dx + dy * dy <= r2) {
                disk(x, y) = 1.0;
                ++count;
            }
        }
    }
    // The center always qualifies, so count >= 1.
    const double weight = 1.0 / static_cast<double>(count);
    for (double& v : disk.samples()) v *= weight;

    return Psf(circular_shift(disk, -k, -l), radius, k, l);
}

Image blur(const Image& f, const Psf& psf) {
    if (!f.same_shape(psf.image()))
        throw std::invalid_argument("blur: image and psf shapes differ");
    return circular_convolve(f, psf.image());
}

namespace detail {

double GaussianStream::next() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller. u1 in (0,1] keeps the log finite; u2 in [0,1).
    double u1 = (static_cast<double>(rng_.next() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = static_cast<double>(rng_.next() >> 11) * 0x1.0p-53;
    double mag = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(angle);
    has_spare_ = true;
    return mag * std::cos(angle);
}

}  // namespace detail

std::pair<Image, NoiseRealization> add_gaussian_noise(const Image& g, double snr_db,
                                                      std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0.0) {
        return {g, NoiseRealization{0.0, seed, 0.0, snr_db}};
    }

    double mean = 0.0;
    for (double v : g.samples()) mean += v;
    mean /= static_cast<double>(g.size());
    double variance = 0.0;
    for (double v : g.samples()) variance += (v - mean) * (v - mean);
    variance /= static_cast<double>(g.size());
    if (variance == 0.0)
        throw std::invalid_argument("add_gaussian_noise: SNR undefined for a constant image");

    const double sigma = std::sqrt(variance / std::pow(10.0, snr_db / 10.0));

    detail::GaussianStream gauss(seed);
    Image noisy(g.rows(), g.cols());
    auto src = g.samples();
    auto dst = noisy.samples();
    double norm2 = 0.0;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        double n = sigma * gauss.next();
        dst[i] = src[i] + n;
        norm2 += n * n;
    }
    return {std::move(noisy), NoiseRealization{sigma, seed, std::sqrt(norm2), snr_db}};
}

}  // namespace deblur
