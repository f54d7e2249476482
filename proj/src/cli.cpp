#include "deblur/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "deblur/cg.hpp"
#include "deblur/direct.hpp"
#include "deblur/fourier.hpp"
#include "deblur/io.hpp"
#include "deblur/metrics.hpp"
#include "deblur/simulate.hpp"

namespace deblur::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Shortest round-trip decimal form; locale-independent, so CSV/JSON bytes are
// stable across reruns.
std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot create " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out_ << ',';
            out_ << header[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    ~CsvWriter() = default;

private:
    std::ofstream out_;
};

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot create " + path.string());
    out << j.dump(2) << '\n';
}

json load_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return json::parse(in);
}

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct ProblemInputs {
    Image g;
    Psf psf;
    std::optional<Image> truth;
    SelectorInputs selector;
};

Image load_image_any(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".raw") return load_raw(path);
    return load_pgm(path);
}

// Gather the degraded image, kernel and prescribed norms, either from a
// previous `simulate` run in the output directory or from explicit overrides.
ProblemInputs load_problem(const RunConfig& cfg) {
    fs::path out(cfg.out_dir);

    Image g = cfg.g_path ? load_image_any(*cfg.g_path)
                         : load_pgm((out / "blurred_noisy.pgm").string());
    Image kernel = cfg.psf_path ? load_raw(*cfg.psf_path)
                                : load_raw((out / "psf.raw").string());
    Psf psf = Psf::from_kernel(std::move(kernel), cfg.radius);

    std::optional<Image> truth;
    if (!cfg.input_path.empty()) truth = load_pgm(cfg.input_path);

    SelectorInputs sel;
    fs::path noise_path = out / "noise.json";
    if (fs::exists(noise_path)) {
        json meta = load_json(noise_path);
        sel.energy = meta.value("true_norm", 0.0);
        sel.discrepancy = meta.value("realized_norm", 0.0);
        if (sel.discrepancy == 0.0 && meta.contains("sigma")) {
            // fallback when only sigma is known
            sel.discrepancy = meta["sigma"].get<double>() * std::sqrt(double(g.size()));
        }
    } else if (truth) {
        sel.energy = frobenius_norm(*truth);
    }
    if (cfg.energy_override) {
        sel.energy = *cfg.energy_override;
        sel.energy_from_truth = false;
    }
    if (cfg.epsilon_override) {
        sel.discrepancy = *cfg.epsilon_override;
        sel.discrepancy_from_truth = false;
    }

    return {std::move(g), std::move(psf), std::move(truth), sel};
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (points < 1) throw std::runtime_error("grid must have at least one point");
    if (!(lo > 0.0) || !(hi > lo)) throw std::runtime_error("bad grid bounds");
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < points; ++i)
        grid[i] = std::pow(10.0, llo + (lhi - llo) * i / (points - 1));
    return grid;
}

MuSelection run_selector(const std::string& name, const SpectralProblem& problem,
                         const SelectorInputs& sel) {
    if (name == "energy") {
        if (!(sel.energy > 0.0))
            throw std::runtime_error("energy selection needs E (simulate first or pass --E)");
        return select_mu_energy(problem, sel.energy);
    }
    if (name == "discrepancy") {
        if (!(sel.discrepancy > 0.0))
            throw std::runtime_error(
                "discrepancy selection needs epsilon (simulate first or pass --epsilon)");
        return select_mu_discrepancy(problem, sel.discrepancy);
    }
    if (name == "miller") {
        if (!(sel.energy > 0.0) || !(sel.discrepancy >= 0.0))
            throw std::runtime_error("miller selection needs E and epsilon");
        return select_mu_miller(sel.energy, sel.discrepancy);
    }
    if (name == "gcv") return select_mu_gcv(problem);
    throw std::runtime_error("unknown selection criterion: " + name);
}

void write_trace_csv(const fs::path& path, const CgTrace& trace) {
    CsvWriter csv(path, {"k", "residual_norm", "normal_residual_norm", "solution_norm",
                         "relative_error", "alpha", "beta"});
    for (const auto& e : trace.entries) {
        csv.row({std::to_string(e.k), fmt_double(e.residual_norm),
                 fmt_double(e.normal_residual_norm), fmt_double(e.solution_norm),
                 e.relative_error ? fmt_double(*e.relative_error) : "",
                 e.alpha ? fmt_double(*e.alpha) : "", e.beta ? fmt_double(*e.beta) : ""});
    }
}

}  // namespace

void cmd_simulate(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw std::runtime_error("simulate: --input is required");
    fs::create_directories(cfg.out_dir);
    fs::path out(cfg.out_dir);

    Image truth = load_pgm(cfg.input_path);
    Psf psf = disk_psf(truth.rows(), truth.cols(), cfg.radius);
    Image blurred = blur(truth, psf);
    auto [noisy, realization] = add_gaussian_noise(blurred, cfg.snr_db, cfg.seed);

    save_pgm((out / "blurred.pgm").string(), blurred);
    save_pgm((out / "blurred_noisy.pgm").string(), noisy);
    save_raw((out / "psf.raw").string(), psf.image());

    // The discrepancy handed to selectors is the realized data error of the
    // observation as written: Gaussian noise plus 8-bit quantization.
    Image written = read_pgm(write_pgm(noisy));
    double realized = frobenius_norm(subtract(written, blurred));

    json meta;
    if (std::isinf(cfg.snr_db))
        meta["snr_db"] = "inf";
    else
        meta["snr_db"] = cfg.snr_db;
    meta["sigma"] = realization.sigma;
    meta["seed"] = realization.seed;
    meta["realized_norm"] = realized;
    meta["true_norm"] = frobenius_norm(truth);
    write_json(out / "noise.json", meta);
}

DeblurReport cmd_deblur(const RunConfig& cfg) {
    ProblemInputs in = load_problem(cfg);
    fs::create_directories(cfg.out_dir);
    fs::path out(cfg.out_dir);

    auto t0 = std::chrono::steady_clock::now();
    DeblurReport report;
    Image restored;

    if (cfg.method == "inverse") {
        SpectralProblem problem(in.g, in.psf);
        restored = problem.pseudo_inverse(cfg.inverse_tol);
        report.method = "pseudo-inverse";
        report.criterion = "tol";
        report.parameter = cfg.inverse_tol;
        report.residual_norm = frobenius_norm(subtract(blur(restored, in.psf), in.g));
    } else if (cfg.method == "tikhonov") {
        if (cfg.mu && !cfg.select.empty())
            throw std::runtime_error("tikhonov takes --mu or --select, not both");
        SpectralProblem problem(in.g, in.psf);
        double mu;
        if (cfg.mu) {
            mu = *cfg.mu;
            report.criterion = "fixed";
        } else if (!cfg.select.empty()) {
            MuSelection sel = run_selector(cfg.select, problem, in.selector);
            mu = sel.mu;
            report.criterion = cfg.select;
            report.selection = sel;
        } else {
            throw std::runtime_error("tikhonov needs --mu or --select");
        }
        restored = problem.tikhonov(mu);
        report.method = "tikhonov";
        report.parameter = mu;
        report.residual_norm = problem.residual_norm(mu);
    } else if (cfg.method == "cg") {
        CgStop stop = cfg.cg_discrepancy
                          ? CgStop::discrepancy(in.selector.discrepancy, cfg.cg_cap)
                          : CgStop::fixed(cfg.cg_iters);
        if (cfg.cg_discrepancy && !(in.selector.discrepancy > 0.0))
            throw std::runtime_error(
                "cg --discrepancy needs epsilon (simulate first or pass --epsilon)");
        CgResult result = cg_deblur(in.g, in.psf, stop, in.truth ? &*in.truth : nullptr);
        restored = std::move(result.restored);
        report.method = "cg";
        report.criterion = cfg.cg_discrepancy ? "discrepancy" : "fixed";
        report.parameter = result.trace.iterations();
        report.residual_norm = result.trace.entries.back().residual_norm;
        write_trace_csv(out / "trace.csv", result.trace);
        report.trace = std::move(result.trace);
    } else {
        throw std::runtime_error("unknown method: '" + cfg.method + "'");
    }

    if (in.truth) report.relative_error = relative_error(restored, *in.truth);
    report.wall_time = elapsed_seconds(t0);

    save_pgm((out / "restored.pgm").string(), restored);

    json j;
    j["method"] = report.method;
    j["criterion"] = report.criterion;
    j["parameter"] = report.parameter;
    if (report.relative_error)
        j["relative_error"] = *report.relative_error;
    else
        j["relative_error"] = nullptr;
    j["residual_norm"] = report.residual_norm;
    j["wall_time"] = report.wall_time;
    if (report.selection) {
        j["converged"] = report.selection->converged;
        j["evaluations"] = report.selection->evaluations;
    }
    if (report.trace) j["iterations"] = report.trace->iterations();
    write_json(out / "report.json", j);

    return report;
}

void cmd_sweep_mu(const RunConfig& cfg) {
    ProblemInputs in = load_problem(cfg);
    if (!in.truth)
        throw std::runtime_error("sweep-mu: --input (true image) is required for the error curve");
    fs::create_directories(cfg.out_dir);
    fs::path out(cfg.out_dir);

    SpectralProblem problem(in.g, in.psf);
    std::vector<double> grid = log_grid(cfg.mu_grid_lo, cfg.mu_grid_hi, cfg.mu_grid_points);

    CsvWriter csv(out / "sweep_mu.csv", {"mu", "relative_error", "residual_norm", "solution_norm"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double mu = grid[i];
        Image restored = problem.tikhonov(mu);
        double err = relative_error(restored, *in.truth);
        csv.row({fmt_double(mu), fmt_double(err), fmt_double(problem.residual_norm(mu)),
                 fmt_double(problem.solution_norm(mu))});
        if (cfg.save_sweep_images) {
            char name[40];
            std::snprintf(name, sizeof(name), "restored_mu_%03u.pgm", unsigned(i));
            save_pgm((out / name).string(), restored);
        }
    }
}

void cmd_sweep_iters(const RunConfig& cfg) {
    ProblemInputs in = load_problem(cfg);
    if (!in.truth)
        throw std::runtime_error(
            "sweep-iters: --input (true image) is required for the error curve");
    fs::create_directories(cfg.out_dir);
    fs::path out(cfg.out_dir);

    CgResult result =
        cg_deblur(in.g, in.psf, CgStop::fixed(cfg.k_sweep_max), &*in.truth);

    CsvWriter csv(out / "sweep_k.csv", {"k", "relative_error", "residual_norm"});
    for (const auto& e : result.trace.entries)
        csv.row({std::to_string(e.k), fmt_double(e.relative_error.value()),
                 fmt_double(e.residual_norm)});
}

void cmd_compare(const RunConfig& cfg) {
    ProblemInputs in = load_problem(cfg);
    if (!in.truth) throw std::runtime_error("compare: --input (true image) is required");
    if (!(in.selector.energy > 0.0) || !(in.selector.discrepancy > 0.0))
        throw std::runtime_error("compare: needs E and epsilon (simulate first or pass overrides)");
    fs::create_directories(cfg.out_dir);
    fs::path out(cfg.out_dir);

    SpectralProblem problem(in.g, in.psf);

    CsvWriter csv(out / "table.csv", {"method", "parameter", "relative_error"});
    for (const char* name : {"energy", "discrepancy", "miller", "gcv"}) {
        MuSelection sel = run_selector(name, problem, in.selector);
        Image restored = problem.tikhonov(sel.mu);
        csv.row({std::string("tikhonov-") + name, fmt_double(sel.mu),
                 fmt_double(relative_error(restored, *in.truth))});
    }

    CgResult result = cg_deblur(in.g, in.psf,
                                CgStop::discrepancy(in.selector.discrepancy, cfg.cg_cap),
                                &*in.truth);
    csv.row({"cg-discrepancy", std::to_string(result.trace.iterations()),
             fmt_double(relative_error(result.restored, *in.truth))});
}

}  // namespace deblur::cli
