#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "deblur/metrics.hpp"

namespace deblur::cli {

/// Everything the five commands consume. Populated by the argv front end;
/// tests drive the commands through this struct directly.
struct RunConfig {
    std::string input_path;  // true image (PGM)
    std::string out_dir;

    double radius = 15.0;
    double snr_db = 40.0;  // +infinity means "no noise"
    std::uint64_t seed = 0;

    // deblur method
    std::string method;  // inverse | tikhonov | cg
    double inverse_tol = 0.0;
    std::optional<double> mu;        // tikhonov: explicit parameter
    std::string select;              // tikhonov: energy|discrepancy|miller|gcv
    std::optional<double> energy_override;
    std::optional<double> epsilon_override;
    int cg_iters = 50;
    bool cg_discrepancy = false;
    int cg_cap = 500;

    // sweeps
    double mu_grid_lo = 1e-7;
    double mu_grid_hi = 10.0;
    int mu_grid_points = 30;
    bool save_sweep_images = false;
    int k_sweep_max = 200;

    // blind-use overrides: degraded image / kernel supplied directly
    std::optional<std::string> g_path;
    std::optional<std::string> psf_path;
};

// Commands. All throw std::runtime_error (or IoError) with a one-line message
// on failure; the binary maps that to a nonzero exit.

/// Blur + noise the input image. Writes blurred.pgm, blurred_noisy.pgm,
/// psf.raw and noise.json into the output directory.
void cmd_simulate(const RunConfig& cfg);

/// Restore with one method; writes restored.pgm and report.json (and
/// trace.csv for CG). Returns the report.
DeblurReport cmd_deblur(const RunConfig& cfg);

/// Tikhonov restoration error/residual/solution norms over a log-spaced mu
/// grid; writes sweep_mu.csv (and per-point PGMs when enabled).
void cmd_sweep_mu(const RunConfig& cfg);

/// One CG run traced to k_sweep_max; writes sweep_k.csv.
void cmd_sweep_iters(const RunConfig& cfg);

/// All four selection rules plus discrepancy-stopped CG; writes table.csv.
void cmd_compare(const RunConfig& cfg);

}  // namespace deblur::cli
