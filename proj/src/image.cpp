#include "deblur/image.hpp"

#include <cmath>
#include <stdexcept>

namespace deblur {

namespace {

void check_dims(int rows, int cols) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("image dimensions must be positive");
}

}  // namespace

Image::Image(int rows, int cols, double fill) : rows_(rows), cols_(cols) {
    check_dims(rows, cols);
    samples_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Image::Image(int rows, int cols, std::vector<double> samples)
    : rows_(rows), cols_(cols), samples_(std::move(samples)) {
    check_dims(rows, cols);
    if (samples_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("sample count does not match rows*cols");
}

Spectrum::Spectrum(int rows, int cols) : rows_(rows), cols_(cols) {
    check_dims(rows, cols);
    bins_.assign(static_cast<std::size_t>(rows) * cols, {0.0, 0.0});
}

Spectrum::Spectrum(int rows, int cols, std::vector<std::complex<double>> bins)
    : rows_(rows), cols_(cols), bins_(std::move(bins)) {
    check_dims(rows, cols);
    if (bins_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("bin count does not match rows*cols");
}

double frobenius_norm(const Image& img) {
    double acc = 0.0;
    for (double v : img.samples()) acc += v * v;
    return std::sqrt(acc);
}

Image subtract(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("shape mismatch");
    Image out(a.rows(), a.cols());
    auto sa = a.samples(), sb = b.samples();
    auto so = out.samples();
    for (std::size_t i = 0; i < so.size(); ++i) so[i] = sa[i] - sb[i];
    return out;
}

Image add(const Image& a, const Image& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("shape mismatch");
    Image out(a.rows(), a.cols());
    auto sa = a.samples(), sb = b.samples();
    auto so = out.samples();
    for (std::size_t i = 0; i < so.size(); ++i) so[i] = sa[i] + sb[i];
    return out;
}

Image scale(const Image& img, double c) {
    Image out(img.rows(), img.cols());
    auto si = img.samples();
    auto so = out.samples();
    for (std::size_t i = 0; i < so.size(); ++i) so[i] = c * si[i];
    return out;
}

}  // namespace deblur
