#pragma once

#include <optional>
#include <vector>

#include "deblur/image.hpp"
#include "deblur/simulate.hpp"

namespace deblur {

/// Stopping rule for the conjugate-gradient iteration.
struct CgStop {
    enum class Mode { fixed, discrepancy };
    Mode mode = Mode::fixed;
    int k_max = 50;         // fixed mode: run exactly this many iterations
    double epsilon = 0.0;   // discrepancy mode: stop once ||A f_k - g|| <= epsilon
    int k_cap = 500;        // discrepancy mode: hard iteration cap

    static CgStop fixed(int k) { return {Mode::fixed, k, 0.0, 0}; }
    static CgStop discrepancy(double epsilon, int k_cap = 500) {
        return {Mode::discrepancy, 0, epsilon, k_cap};
    }
};

/// One row per iterate, including the k = 0 start. alpha/beta on entry k are
/// the coefficients of the step that produced iterate k (absent at k = 0).
struct CgTraceEntry {
    int k = 0;
    double residual_norm = 0.0;         // ||A f_k - g||, spatial-equivalent
    double normal_residual_norm = 0.0;  // ||r_k|| of the normal equations, same scaling
    double solution_norm = 0.0;         // ||f_k||
    std::optional<double> relative_error;  // present when ground truth supplied
    std::optional<double> alpha;
    std::optional<double> beta;
};

struct CgTrace {
    std::vector<CgTraceEntry> entries;
    bool reached_exact = false;  // iteration ended with a zero normal residual
    int iterations() const noexcept { return static_cast<int>(entries.size()) - 1; }
};

struct CgResult {
    Image restored;
    CgTrace trace;
};

/// Conjugate gradient on the normal equations |K_hat|^2 f_hat = conj(K_hat) g_hat,
/// iterated entirely in the Fourier domain (one forward transform per input,
/// one inverse transform at the end):
///   f_0 = 0,  r_0 = p_0 = conj(K_hat) g_hat
///   alpha_k = sum|r_k|^2 / sum |K_hat|^2 |p_k|^2
///   f_{k+1} = f_k + alpha_k p_k
///   r_{k+1} = r_k - alpha_k |K_hat|^2 p_k
///   beta_k  = sum|r_{k+1}|^2 / sum|r_k|^2
///   p_{k+1} = r_{k+1} + beta_k p_k
/// Iteration count is the regularizer; `stop` picks fixed-count or
/// discrepancy-principle stopping.
CgResult cg_deblur(const Image& g, const Psf& psf, const CgStop& stop,
                   const Image* truth = nullptr);

/// Spectral-domain core: callers supply the transforms (and may construct
/// synthetic kernels no spatial PSF produces).
CgResult cg_deblur_spectra(const Spectrum& g_hat, const Spectrum& k_hat,
                           const CgStop& stop, const Spectrum* truth_hat = nullptr);

}  // namespace deblur
