#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace deblur {

/// Real-valued 2-D pixel grid, row-major. Samples are doubles for the whole
/// pipeline; quantization to 8 bits happens only when writing PGM.
class Image {
public:
    Image() = default;
    Image(int rows, int cols, double fill = 0.0);
    Image(int rows, int cols, std::vector<double> samples);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }

    double operator()(int r, int c) const noexcept {
        return samples_[static_cast<std::size_t>(r) * cols_ + c];
    }
    double& operator()(int r, int c) noexcept {
        return samples_[static_cast<std::size_t>(r) * cols_ + c];
    }

    std::span<const double> samples() const noexcept { return samples_; }
    std::span<double> samples() noexcept { return samples_; }

    bool same_shape(const Image& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> samples_;
};

/// Complex-valued 2-D grid holding the DFT of an Image. The transform
/// convention is fixed project-wide: forward unscaled, inverse carries
/// the 1/(rows*cols) factor.
class Spectrum {
public:
    static constexpr std::string_view convention = "forward-unscaled";

    Spectrum() = default;
    Spectrum(int rows, int cols);
    Spectrum(int rows, int cols, std::vector<std::complex<double>> bins);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return bins_.size(); }

    std::complex<double> operator()(int r, int c) const noexcept {
        return bins_[static_cast<std::size_t>(r) * cols_ + c];
    }
    std::complex<double>& operator()(int r, int c) noexcept {
        return bins_[static_cast<std::size_t>(r) * cols_ + c];
    }

    std::span<const std::complex<double>> bins() const noexcept { return bins_; }
    std::span<std::complex<double>> bins() noexcept { return bins_; }

    bool same_shape(const Spectrum& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::complex<double>> bins_;
};

/// sqrt of the sum of squared samples.
double frobenius_norm(const Image& img);

/// Elementwise a - b; shapes must match.
Image subtract(const Image& a, const Image& b);

/// Elementwise a + b; shapes must match.
Image add(const Image& a, const Image& b);

/// Elementwise c * img.
Image scale(const Image& img, double c);

}  // namespace deblur
