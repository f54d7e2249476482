#include "deblur/cg.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "deblur/fourier.hpp"

namespace deblur {

namespace {

double norm2(const std::vector<std::complex<double>>& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return acc;
}

}  // namespace

CgResult cg_deblur_spectra(const Spectrum& g_hat, const Spectrum& k_hat,
                           const CgStop& stop, const Spectrum* truth_hat) {
    if (!g_hat.same_shape(k_hat))
        throw std::invalid_argument("cg_deblur: spectra shapes differ");
    if (truth_hat && !truth_hat->same_shape(g_hat))
        throw std::invalid_argument("cg_deblur: truth shape differs");
    if (stop.mode == CgStop::Mode::fixed && stop.k_max < 0)
        throw std::invalid_argument("cg_deblur: k_max must be >= 0");
    if (stop.mode == CgStop::Mode::discrepancy) {
        if (!(stop.epsilon > 0.0))
            throw std::invalid_argument("cg_deblur: epsilon must be positive");
        if (stop.k_cap < 1)
            throw std::invalid_argument("cg_deblur: k_cap must be >= 1");
    }

    const std::size_t n = g_hat.size();
    const double root_mn = std::sqrt(static_cast<double>(g_hat.rows()) * g_hat.cols());

    auto gb = g_hat.bins();
    auto kb = k_hat.bins();

    std::vector<double> d(n);          // |K_hat|^2, the diagonal normal operator
    std::vector<std::complex<double>> f(n, 0.0), r(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = std::norm(kb[i]);
        r[i] = std::conj(kb[i]) * gb[i];
        p[i] = r[i];
    }

    double truth_norm = 0.0;
    if (truth_hat) truth_norm = std::sqrt(norm2({truth_hat->bins().begin(),
                                                 truth_hat->bins().end()})) / root_mn;

    CgTrace trace;
    double rr = norm2(r);

    auto record = [&](int k, std::optional<double> alpha, std::optional<double> beta) {
        CgTraceEntry e;
        e.k = k;
        double data_res2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) data_res2 += std::norm(kb[i] * f[i] - gb[i]);
        e.residual_norm = std::sqrt(data_res2) / root_mn;
        e.normal_residual_norm = std::sqrt(rr) / root_mn;
        e.solution_norm = std::sqrt(norm2(f)) / root_mn;
        if (truth_hat) {
            double err2 = 0.0;
            auto tb = truth_hat->bins();
            for (std::size_t i = 0; i < n; ++i) err2 += std::norm(f[i] - tb[i]);
            e.relative_error = std::sqrt(err2) / root_mn / truth_norm;
        }
        e.alpha = alpha;
        e.beta = beta;
        trace.entries.push_back(std::move(e));
    };

    record(0, std::nullopt, std::nullopt);

    int k = 0;
    while (true) {
        if (stop.mode == CgStop::Mode::fixed) {
            if (k >= stop.k_max) break;
        } else {
            if (trace.entries.back().residual_norm <= stop.epsilon) break;
            if (k >= stop.k_cap) break;
        }
        if (rr == 0.0) {
            trace.reached_exact = true;
            break;
        }

        double denom = 0.0;
        for (std::size_t i = 0; i < n; ++i) denom += d[i] * std::norm(p[i]);
        if (denom == 0.0)
            throw std::runtime_error("cg_deblur: breakdown (zero curvature with nonzero residual)");

        const double alpha = rr / denom;
        for (std::size_t i = 0; i < n; ++i) {
            f[i] += alpha * p[i];
            r[i] -= alpha * d[i] * p[i];
        }
        const double rr_next = norm2(r);
        const double beta = rr_next / rr;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
        rr = rr_next;
        ++k;
        record(k, alpha, beta);
    }

    Image restored = idft2(Spectrum(g_hat.rows(), g_hat.cols(),
                                    std::vector<std::complex<double>>(f.begin(), f.end())));
    return {std::move(restored), std::move(trace)};
}

CgResult cg_deblur(const Image& g, const Psf& psf, const CgStop& stop, const Image* truth) {
    if (!g.same_shape(psf.image()))
        throw std::invalid_argument("cg_deblur: image and psf shapes differ");
    Spectrum g_hat = dft2(g);
    Spectrum k_hat = dft2(psf.image());
    if (truth) {
        Spectrum t_hat = dft2(*truth);
        return cg_deblur_spectra(g_hat, k_hat, stop, &t_hat);
    }
    return cg_deblur_spectra(g_hat, k_hat, stop, nullptr);
}

}  // namespace deblur
