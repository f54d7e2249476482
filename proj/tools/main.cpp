// deblur: simulate out-of-focus degradation and restore images by spectral
// filtering or conjugate gradient. See README for the experiment workflow.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>

#include "deblur/cli.hpp"

namespace {

double parse_snr(const std::string& text) {
    if (text == "inf" || text == "INF" || text == "Inf")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--snr", "expected a number in dB or 'inf'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Out-of-focus image de-blurring toolkit"};
    app.require_subcommand(1);

    deblur::cli::RunConfig cfg;
    std::string snr_text = "40";

    auto add_common = [&](CLI::App* cmd, bool input_required) {
        auto* input = cmd->add_option("--input", cfg.input_path, "true image (binary PGM)");
        if (input_required) input->required();
        cmd->add_option("--out", cfg.out_dir, "output directory")->required();
        cmd->add_option("--radius", cfg.radius, "blur disk radius in pixels");
        cmd->add_option("--snr", snr_text, "signal-to-noise ratio in dB, or 'inf'");
        cmd->add_option("--seed", cfg.seed, "noise generator seed");
    };

    auto* sim = app.add_subcommand("simulate", "blur the input image and add noise");
    add_common(sim, true);

    auto* deb = app.add_subcommand("deblur", "restore a degraded image");
    add_common(deb, false);
    deb->add_option("--g", [&cfg](const std::vector<std::string>& v) {
        cfg.g_path = v.back();
        return true;
    }, "degraded image (default: <out>/blurred_noisy.pgm)");
    deb->add_option("--psf", [&cfg](const std::vector<std::string>& v) {
        cfg.psf_path = v.back();
        return true;
    }, "blur kernel, RAWF64 wraparound layout (default: <out>/psf.raw)");
    deb->add_option("--E", [&cfg](const std::vector<std::string>& v) {
        cfg.energy_override = std::stod(v.back());
        return true;
    }, "prescribed energy override");
    deb->add_option("--epsilon", [&cfg](const std::vector<std::string>& v) {
        cfg.epsilon_override = std::stod(v.back());
        return true;
    }, "prescribed discrepancy override");
    deb->require_subcommand(1);

    auto* inverse = deb->add_subcommand("inverse", "pseudo-inverse filter");
    inverse->add_option("--tol", cfg.inverse_tol, "zero-fill bins with |K| <= tol");

    auto* tik = deb->add_subcommand("tikhonov", "Tikhonov-regularized filter");
    auto* mu_opt = tik->add_option("--mu", [&cfg](const std::vector<std::string>& v) {
        cfg.mu = std::stod(v.back());
        return true;
    }, "explicit regularization parameter");
    tik->add_option("--select", cfg.select, "criterion: energy|discrepancy|miller|gcv")
        ->check(CLI::IsMember({"energy", "discrepancy", "miller", "gcv"}))
        ->excludes(mu_opt);

    auto* cg = deb->add_subcommand("cg", "conjugate gradient on the normal equations");
    auto* iters_opt = cg->add_option("--iters", cfg.cg_iters, "fixed iteration count");
    cg->add_flag("--discrepancy", cfg.cg_discrepancy, "stop when the residual reaches epsilon")
        ->excludes(iters_opt);
    cg->add_option("--cap", cfg.cg_cap, "iteration cap for --discrepancy");

    auto* sweep_mu = app.add_subcommand("sweep-mu", "error/residual curves over a mu grid");
    add_common(sweep_mu, true);
    sweep_mu->add_option("--mu-min", cfg.mu_grid_lo, "grid lower bound");
    sweep_mu->add_option("--mu-max", cfg.mu_grid_hi, "grid upper bound");
    sweep_mu->add_option("--points", cfg.mu_grid_points, "grid size");
    sweep_mu->add_flag("--save-images", cfg.save_sweep_images, "write one PGM per grid point");

    auto* sweep_k = app.add_subcommand("sweep-iters", "CG error curve versus iteration count");
    add_common(sweep_k, true);
    sweep_k->add_option("--kmax", cfg.k_sweep_max, "iterations to trace");

    auto* compare = app.add_subcommand("compare", "all selection rules plus CG, one table");
    add_common(compare, true);
    compare->add_option("--cap", cfg.cg_cap, "CG iteration cap");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.snr_db = parse_snr(snr_text);
        if (sim->parsed()) {
            deblur::cli::cmd_simulate(cfg);
        } else if (deb->parsed()) {
            if (inverse->parsed()) cfg.method = "inverse";
            if (tik->parsed()) cfg.method = "tikhonov";
            if (cg->parsed()) cfg.method = "cg";
            deblur::cli::cmd_deblur(cfg);
        } else if (sweep_mu->parsed()) {
            deblur::cli::cmd_sweep_mu(cfg);
        } else if (sweep_k->parsed()) {
            deblur::cli::cmd_sweep_iters(cfg);
        } else if (compare->parsed()) {
            deblur::cli::cmd_compare(cfg);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "deblur: %s\n", e.what());
        return 1;
    }
    return 0;
}
