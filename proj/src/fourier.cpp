#include "deblur/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace deblur {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

// One complex-to-complex 2-D transform. FFTW_ESTIMATE keeps planning
// deterministic and cheap; buffers are plain std::complex arrays, which FFTW
// guarantees layout-compatible with fftw_complex.
void transform(std::vector<std::complex<double>>& data, int rows, int cols, int sign) {
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_2d(rows, cols, ptr, ptr, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace

Spectrum dft2(const Image& img) {
    const int rows = img.rows(), cols = img.cols();
    std::vector<std::complex<double>> data(img.size());
    auto src = img.samples();
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = {src[i], 0.0};
    transform(data, rows, cols, FFTW_FORWARD);
    return Spectrum(rows, cols, std::move(data));
}

Image idft2(const Spectrum& spec, double* max_imag_residue) {
    const int rows = spec.rows(), cols = spec.cols();
    std::vector<std::complex<double>> data(spec.bins().begin(), spec.bins().end());
    transform(data, rows, cols, FFTW_BACKWARD);

    const double scale = 1.0 / (static_cast<double>(rows) * cols);
    Image out(rows, cols);
    auto dst = out.samples();
    double residue = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        dst[i] = data[i].real() * scale;
        residue = std::max(residue, std::abs(data[i].imag()) * scale);
    }
    if (max_imag_residue) *max_imag_residue = residue;
    return out;
}

double spectral_norm(const Spectrum& spec) {
    double acc = 0.0;
    for (const auto& z : spec.bins()) acc += std::norm(z);
    return std::sqrt(acc / (static_cast<double>(spec.rows()) * spec.cols()));
}

Image circular_convolve(const Image& f, const Image& k) {
    if (!f.same_shape(k))
        throw std::invalid_argument("circular_convolve: shape mismatch");
    Spectrum fs = dft2(f);
    Spectrum ks = dft2(k);
    auto fb = fs.bins();
    auto kb = ks.bins();
    for (std::size_t i = 0; i < fb.size(); ++i) fb[i] *= kb[i];
    return idft2(fs);
}

Image circular_shift(const Image& img, int dr, int dc) {
    const int rows = img.rows(), cols = img.cols();
    auto wrap = [](int x, int n) {
        int m = x % n;
        return m < 0 ? m + n : m;
    };
    Image out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        int src_r = wrap(r - dr, rows);
        for (int c = 0; c < cols; ++c) out(r, c) = img(src_r, wrap(c - dc, cols));
    }
    return out;
}

}  // namespace deblur
