#pragma once

// Shared helpers for the test suites: deterministic random inputs, brute-force
// reference computations, and a scratch-directory guard. The reference
// implementations here are deliberately written as direct summations so they
// stay independent of the library's spectral code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "deblur/image.hpp"
#include "deblur/simulate.hpp"

namespace testsupport {

using deblur::Image;

inline Image random_image(int rows, int cols, std::uint64_t seed, double lo = 0.0,
                          double hi = 255.0) {
    deblur::detail::SplitMix64 rng{seed ^ 0xabcdef12345678ULL};
    Image img(rows, cols);
    for (double& v : img.samples()) {
        double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
        v = lo + (hi - lo) * u;
    }
    return img;
}

inline double max_abs_diff(const Image& a, const Image& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
    return m;
}

inline double max_abs(const Image& a) {
    double m = 0.0;
    for (double v : a.samples()) m = std::max(m, std::abs(v));
    return m;
}

/// O(N^4) periodic convolution: out(x,y) = sum_k sum_l f(k,l) K((x-k) mod M, (y-l) mod N).
inline Image direct_periodic_convolve(const Image& f, const Image& k) {
    const int rows = f.rows(), cols = f.cols();
    Image out(rows, cols, 0.0);
    for (int x = 0; x < rows; ++x)
        for (int y = 0; y < cols; ++y) {
            double acc = 0.0;
            for (int a = 0; a < rows; ++a)
                for (int b = 0; b < cols; ++b) {
                    int xr = ((x - a) % rows + rows) % rows;
                    int yc = ((y - b) % cols + cols) % cols;
                    acc += f(a, b) * k(xr, yc);
                }
            out(x, y) = acc;
        }
    return out;
}

/// Lattice points of the disk (x-k)^2 + (y-l)^2 <= r^2 centered on the
/// geometric center, as (row, col) pairs in un-shifted layout.
inline std::vector<std::pair<int, int>> disk_lattice_points(int rows, int cols, double radius) {
    const int k = rows / 2, l = cols / 2;
    std::vector<std::pair<int, int>> pts;
    for (int x = 0; x < rows; ++x)
        for (int y = 0; y < cols; ++y) {
            double dx = x - k, dy = y - l;
            if (dx * dx + dy * dy <= radius * radius) pts.emplace_back(x, y);
        }
    return pts;
}

/// Textbook GCV written in its mu-scaled form, from raw spectra:
///   V(mu) = sum (mu*|g_i| / (s_i^2+mu))^2 / [sum mu/(s_i^2+mu)]^2.
inline double gcv_standard_form(const deblur::Spectrum& g_hat, const deblur::Spectrum& k_hat,
                                double mu) {
    double num = 0.0, trace = 0.0;
    for (std::size_t i = 0; i < g_hat.size(); ++i) {
        double s2 = std::norm(k_hat.bins()[i]);
        double t = mu * std::abs(g_hat.bins()[i]) / (s2 + mu);
        num += t * t;
        trace += mu / (s2 + mu);
    }
    return num / (trace * trace);
}

/// Naive O(N^2) 1-D DFT applied along rows then columns; the slow cross-check
/// for the FFT-backed transform.
inline deblur::Spectrum naive_dft2(const Image& img) {
    const int rows = img.rows(), cols = img.cols();
    using cd = std::complex<double>;
    deblur::Spectrum out(rows, cols);
    for (int u = 0; u < rows; ++u)
        for (int v = 0; v < cols; ++v) {
            cd acc = 0.0;
            for (int x = 0; x < rows; ++x)
                for (int y = 0; y < cols; ++y) {
                    double phase = -2.0 * std::numbers::pi *
                                   (double(u) * x / rows + double(v) * y / cols);
                    acc += img(x, y) * cd(std::cos(phase), std::sin(phase));
                }
            out(u, v) = acc;
        }
    return out;
}

/// Scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("deblur_test_" + tag + "_" + std::to_string(counter_++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string str(const std::string& name = "") const {
        return name.empty() ? path_.string() : (path_ / name).string();
    }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

/// A well-conditioned kernel: 0.8*delta + 0.2*(radius-1 disk). Its spectrum
/// satisfies min |K_hat| >= 0.6, so exact inversion is stable.
inline deblur::Psf well_conditioned_psf(int rows, int cols) {
    deblur::Psf disk = deblur::disk_psf(rows, cols, 1.0);
    Image kernel(rows, cols, 0.0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) kernel(r, c) = 0.2 * disk.image()(r, c);
    kernel(0, 0) += 0.8;
    return deblur::Psf::from_kernel(std::move(kernel), 1.0);
}

}  // namespace testsupport
