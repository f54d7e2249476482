#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deblur/image.hpp"
#include "deblur/simulate.hpp"

namespace deblur {

/// Precomputed spectral quantities of one (g, psf) instance. All direct
/// restorations and every parameter-selection rule are pointwise functions of
/// |K_hat| and g_hat, so the transforms are done once here and the per-mu
/// work is a single pass over the bins.
class SpectralProblem {
public:
    SpectralProblem(const Image& g, const Psf& psf);
    SpectralProblem(Spectrum g_hat, Spectrum k_hat);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    /// ||f_mu||_F evaluated spectrally (Parseval-scaled).
    double solution_norm(double mu) const;
    /// ||A f_mu - g||_F evaluated spectrally (Parseval-scaled).
    double residual_norm(double mu) const;
    /// GCV objective: [sum (|g_i|/(s_i^2+mu))^2] / [sum 1/(s_i^2+mu)]^2.
    double gcv_value(double mu) const;

    /// Tikhonov-filtered restoration conj(K)*g / (|K|^2 + mu). mu = 0 is the
    /// pseudo-inverse limit; bins with |K| = 0 are zero-filled and counted in
    /// `zero_filled_bins` when non-null.
    Image tikhonov(double mu, int* zero_filled_bins = nullptr) const;

    /// Pointwise division g_hat / K_hat where |K_hat| > tol, else 0.
    Image pseudo_inverse(double tol, int* zero_filled_bins = nullptr) const;

    const std::vector<double>& kernel_magnitudes() const noexcept { return s_; }
    const std::vector<double>& data_magnitudes() const noexcept { return g_mag_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    Spectrum g_hat_;
    Spectrum k_hat_;
    std::vector<double> s_;      // |K_hat| per bin
    std::vector<double> g_mag_;  // |g_hat| per bin
};

Image pseudo_inverse_deblur(const Image& g, const Psf& psf, double tol);
Image tikhonov_deblur(const Image& g, const Psf& psf, double mu);

struct TikhonovNorms {
    double solution_norm;
    double residual_norm;
};
TikhonovNorms tikhonov_norms(const Image& g, const Psf& psf, double mu);

double gcv_value(const Image& g, const Psf& psf, double mu);

/// Prescribed quantities the selection rules consume, with a record of where
/// each came from (ground truth in simulation, user override otherwise).
struct SelectorInputs {
    double energy = 0.0;       // E, Frobenius norm of the true image
    double discrepancy = 0.0;  // epsilon, norm of the noise
    bool energy_from_truth = true;
    bool discrepancy_from_truth = true;
};

enum class MuCriterion { energy, discrepancy, miller, gcv };
std::string to_string(MuCriterion c);

struct MuSelection {
    MuCriterion criterion;
    double mu = 0.0;
    int evaluations = 0;
    std::optional<std::pair<double, double>> bracket;  // final search interval
    bool converged = false;
};

// Selection rules. The bisection rules search log-mu over [1e-12, 1e3] to a
// relative bracket width of 1e-6; unreachable prescriptions clamp to the
// bracket edge and come back flagged not-converged.
MuSelection select_mu_energy(const SpectralProblem& p, double energy);
MuSelection select_mu_discrepancy(const SpectralProblem& p, double epsilon);
MuSelection select_mu_energy(const Image& g, const Psf& psf, double energy);
MuSelection select_mu_discrepancy(const Image& g, const Psf& psf, double epsilon);

/// mu = (epsilon / energy)^2, exactly.
MuSelection select_mu_miller(double energy, double epsilon);

/// Coarse 121-point log grid over [1e-10, 1e2] (ties toward smaller mu), then
/// golden-section refinement to relative width 1e-4. A grid-endpoint minimum
/// is returned flagged not-converged.
MuSelection select_mu_gcv(const SpectralProblem& p);
MuSelection select_mu_gcv(const Image& g, const Psf& psf);

namespace detail {
constexpr double kMuBracketLo = 1e-12;
constexpr double kMuBracketHi = 1e3;
constexpr double kMuBisectRelTol = 1e-6;
constexpr int kMuBisectMaxIter = 200;
constexpr double kGcvGridLo = 1e-10;
constexpr double kGcvGridHi = 1e2;
constexpr int kGcvGridPoints = 121;
constexpr double kGcvRefineRelTol = 1e-4;
}  // namespace detail

}  // namespace deblur
