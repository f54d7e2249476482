#include "deblur/direct.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "deblur/fourier.hpp"

namespace deblur {

SpectralProblem::SpectralProblem(const Image& g, const Psf& psf)
    : SpectralProblem(dft2(g), dft2(psf.image())) {
    if (!g.same_shape(psf.image()))
        throw std::invalid_argument("spectral problem: image and psf shapes differ");
}

SpectralProblem::SpectralProblem(Spectrum g_hat, Spectrum k_hat)
    : rows_(g_hat.rows()), cols_(g_hat.cols()),
      g_hat_(std::move(g_hat)), k_hat_(std::move(k_hat)) {
    if (!g_hat_.same_shape(k_hat_))
        throw std::invalid_argument("spectral problem: spectra shapes differ");
    s_.resize(g_hat_.size());
    g_mag_.resize(g_hat_.size());
    auto gb = g_hat_.bins();
    auto kb = k_hat_.bins();
    for (std::size_t i = 0; i < s_.size(); ++i) {
        s_[i] = std::abs(kb[i]);
        g_mag_[i] = std::abs(gb[i]);
    }
}

double SpectralProblem::solution_norm(double mu) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
        if (s_[i] == 0.0) continue;
        double t = s_[i] * g_mag_[i] / (s_[i] * s_[i] + mu);
        acc += t * t;
    }
    return std::sqrt(acc / (static_cast<double>(rows_) * cols_));
}

double SpectralProblem::residual_norm(double mu) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
        // |K|=0 bins stay entirely in the residual for every mu.
        double t = s_[i] == 0.0 ? g_mag_[i]
                                : mu * g_mag_[i] / (s_[i] * s_[i] + mu);
        acc += t * t;
    }
    return std::sqrt(acc / (static_cast<double>(rows_) * cols_));
}

double SpectralProblem::gcv_value(double mu) const {
    double num = 0.0, trace = 0.0;
    for (std::size_t i = 0; i < s_.size(); ++i) {
        double d = s_[i] * s_[i] + mu;
        double t = g_mag_[i] / d;
        num += t * t;
        trace += 1.0 / d;
    }
    return num / (trace * trace);
}

Image SpectralProblem::tikhonov(double mu, int* zero_filled_bins) const {
    Spectrum f_hat(rows_, cols_);
    auto out = f_hat.bins();
    auto gb = g_hat_.bins();
    auto kb = k_hat_.bins();
    int zeroed = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double d = s_[i] * s_[i] + mu;
        if (d == 0.0) {
            out[i] = 0.0;
            ++zeroed;
        } else {
            out[i] = std::conj(kb[i]) * gb[i] / d;
        }
    }
    if (zero_filled_bins) *zero_filled_bins = zeroed;
    return idft2(f_hat);
}

Image SpectralProblem::pseudo_inverse(double tol, int* zero_filled_bins) const {
    Spectrum f_hat(rows_, cols_);
    auto out = f_hat.bins();
    auto gb = g_hat_.bins();
    auto kb = k_hat_.bins();
    int zeroed = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (s_[i] > tol) {
            out[i] = gb[i] / kb[i];
        } else {
            out[i] = 0.0;
            ++zeroed;
        }
    }
    if (zero_filled_bins) *zero_filled_bins = zeroed;
    return idft2(f_hat);
}

Image pseudo_inverse_deblur(const Image& g, const Psf& psf, double tol) {
    if (tol < 0.0) throw std::invalid_argument("pseudo_inverse_deblur: tol must be >= 0");
    return SpectralProblem(g, psf).pseudo_inverse(tol);
}

Image tikhonov_deblur(const Image& g, const Psf& psf, double mu) {
    if (mu < 0.0) throw std::invalid_argument("tikhonov_deblur: mu must be >= 0");
    return SpectralProblem(g, psf).tikhonov(mu);
}

TikhonovNorms tikhonov_norms(const Image& g, const Psf& psf, double mu) {
    SpectralProblem p(g, psf);
    return {p.solution_norm(mu), p.residual_norm(mu)};
}

double gcv_value(const Image& g, const Psf& psf, double mu) {
    return SpectralProblem(g, psf).gcv_value(mu);
}

std::string to_string(MuCriterion c) {
    switch (c) {
        case MuCriterion::energy: return "energy";
        case MuCriterion::discrepancy: return "discrepancy";
        case MuCriterion::miller: return "miller";
        case MuCriterion::gcv: return "gcv";
    }
    return "?";
}

namespace {

// Log-domain bisection for a strictly monotone objective. `decreasing` states
// how the objective moves with mu; saturated prescriptions clamp to the
// bracket edge and are flagged.
template <typename F>
MuSelection bisect_mu(MuCriterion criterion, F&& objective, double target, bool decreasing) {
    using detail::kMuBracketHi;
    using detail::kMuBracketLo;

    int evals = 0;
    auto eval = [&](double mu) {
        ++evals;
        return objective(mu);
    };

    const double at_lo = eval(kMuBracketLo);
    const double at_hi = eval(kMuBracketHi);

    // Values outside the attainable range cannot be matched.
    const double attainable_max = decreasing ? at_lo : at_hi;
    const double attainable_min = decreasing ? at_hi : at_lo;
    if (target >= attainable_max) {
        double mu = decreasing ? kMuBracketLo : kMuBracketHi;
        return {criterion, mu, evals, std::make_pair(kMuBracketLo, kMuBracketHi), false};
    }
    if (target <= attainable_min) {
        double mu = decreasing ? kMuBracketHi : kMuBracketLo;
        return {criterion, mu, evals, std::make_pair(kMuBracketLo, kMuBracketHi), false};
    }

    double a = kMuBracketLo, b = kMuBracketHi;
    for (int i = 0; i < detail::kMuBisectMaxIter && (b - a) > detail::kMuBisectRelTol * a; ++i) {
        double mid = std::sqrt(a * b);
        double value = eval(mid);
        bool go_right = decreasing ? (value > target) : (value < target);
        if (go_right)
            a = mid;
        else
            b = mid;
    }
    bool converged = (b - a) <= detail::kMuBisectRelTol * a;
    return {criterion, std::sqrt(a * b), evals, std::make_pair(a, b), converged};
}

}  // namespace

MuSelection select_mu_energy(const SpectralProblem& p, double energy) {
    if (!(energy > 0.0))
        throw std::invalid_argument("select_mu_energy: prescribed energy must be positive");
    return bisect_mu(
        MuCriterion::energy, [&](double mu) { return p.solution_norm(mu); }, energy,
        /*decreasing=*/true);
}

MuSelection select_mu_discrepancy(const SpectralProblem& p, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("select_mu_discrepancy: epsilon must be positive");
    return bisect_mu(
        MuCriterion::discrepancy, [&](double mu) { return p.residual_norm(mu); }, epsilon,
        /*decreasing=*/false);
}

MuSelection select_mu_energy(const Image& g, const Psf& psf, double energy) {
    return select_mu_energy(SpectralProblem(g, psf), energy);
}

MuSelection select_mu_discrepancy(const Image& g, const Psf& psf, double epsilon) {
    return select_mu_discrepancy(SpectralProblem(g, psf), epsilon);
}

MuSelection select_mu_miller(double energy, double epsilon) {
    if (!(energy > 0.0))
        throw std::invalid_argument("select_mu_miller: prescribed energy must be positive");
    if (epsilon < 0.0)
        throw std::invalid_argument("select_mu_miller: epsilon must be >= 0");
    double ratio = epsilon / energy;
    return {MuCriterion::miller, ratio * ratio, 0, std::nullopt, true};
}

MuSelection select_mu_gcv(const SpectralProblem& p) {
    using namespace detail;

    int evals = 0;
    auto V = [&](double mu) {
        ++evals;
        return p.gcv_value(mu);
    };

    // Coarse pass: log grid, first-minimum tie break (toward smaller mu).
    const double lg_lo = std::log10(kGcvGridLo);
    const double lg_hi = std::log10(kGcvGridHi);
    std::vector<double> grid(kGcvGridPoints);
    for (int i = 0; i < kGcvGridPoints; ++i)
        grid[i] = std::pow(10.0, lg_lo + (lg_hi - lg_lo) * i / (kGcvGridPoints - 1));

    int best = 0;
    double best_value = V(grid[0]);
    for (int i = 1; i < kGcvGridPoints; ++i) {
        double value = V(grid[i]);
        if (value < best_value) {
            best_value = value;
            best = i;
        }
    }

    if (best == 0 || best == kGcvGridPoints - 1) {
        auto bracket = best == 0 ? std::make_pair(grid[0], grid[1])
                                 : std::make_pair(grid[kGcvGridPoints - 2], grid.back());
        return {MuCriterion::gcv, grid[best], evals, bracket, false};
    }

    // Golden-section refinement in log10(mu) over the neighbor interval.
    double ta = std::log10(grid[best - 1]);
    double tb = std::log10(grid[best + 1]);
    const double stop_width = std::log10(1.0 + kGcvRefineRelTol);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

    double t1 = tb - inv_phi * (tb - ta);
    double t2 = ta + inv_phi * (tb - ta);
    double f1 = V(std::pow(10.0, t1));
    double f2 = V(std::pow(10.0, t2));
    while (tb - ta > stop_width) {
        if (f1 <= f2) {
            tb = t2;
            t2 = t1;
            f2 = f1;
            t1 = tb - inv_phi * (tb - ta);
            f1 = V(std::pow(10.0, t1));
        } else {
            ta = t1;
            t1 = t2;
            f1 = f2;
            t2 = ta + inv_phi * (tb - ta);
            f2 = V(std::pow(10.0, t2));
        }
    }

    double mu = std::pow(10.0, (ta + tb) / 2.0);
    return {MuCriterion::gcv, mu, evals,
            std::make_pair(std::pow(10.0, ta), std::pow(10.0, tb)), true};
}

MuSelection select_mu_gcv(const Image& g, const Psf& psf) {
    if (frobenius_norm(g) == 0.0)
        throw std::invalid_argument("select_mu_gcv: g must be nonzero");
    return select_mu_gcv(SpectralProblem(g, psf));
}

}  // namespace deblur
