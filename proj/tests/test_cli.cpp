#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "deblur/cli.hpp"
#include "deblur/io.hpp"
#include "deblur/phantom.hpp"
#include "support.hpp"

using namespace deblur;
using deblur::cli::RunConfig;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return json::parse(in);
}

std::vector<std::vector<std::string>> load_csv(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

RunConfig base_config(const testsupport::TempDir& dir, const std::string& input) {
    RunConfig cfg;
    cfg.input_path = input;
    cfg.out_dir = dir.str();
    cfg.radius = 3.0;
    cfg.snr_db = 40.0;
    cfg.seed = 0;
    return cfg;
}

std::string write_phantom_pgm(const testsupport::TempDir& dir, int size) {
    std::string path = dir.str("truth.pgm");
    save_pgm(path, make_phantom(size, size));
    return path;
}

}  // namespace

TEST_CASE("simulate writes the four outputs with consistent metadata") {
    testsupport::TempDir dir("sim");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 64));
    cli::cmd_simulate(cfg);

    for (const char* name : {"blurred.pgm", "blurred_noisy.pgm", "psf.raw", "noise.json"})
        CHECK(fs::exists(dir.path() / name));

    json meta = load_json(dir.path() / "noise.json");
    CHECK(meta["snr_db"].get<double>() == 40.0);
    CHECK(meta["seed"].get<std::uint64_t>() == 0);
    CHECK(meta["sigma"].get<double>() > 0.0);
    CHECK(meta["realized_norm"].get<double>() > 0.0);
    Image truth = load_pgm(cfg.input_path);
    CHECK(meta["true_norm"].get<double>() ==
          doctest::Approx(frobenius_norm(truth)).epsilon(1e-12));
}

TEST_CASE("simulate with snr=inf produces identical blurred outputs") {
    testsupport::TempDir dir("sim_inf");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 32));
    cfg.snr_db = std::numeric_limits<double>::infinity();
    cli::cmd_simulate(cfg);

    CHECK(read_file(dir.str("blurred.pgm")) == read_file(dir.str("blurred_noisy.pgm")));
    json meta = load_json(dir.path() / "noise.json");
    CHECK(meta["snr_db"].get<std::string>() == "inf");
    CHECK(meta["sigma"].get<double>() == 0.0);
}

TEST_CASE("simulate with the identity kernel reproduces the input") {
    testsupport::TempDir dir("sim_id");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 32));
    cfg.radius = 0.5;
    cfg.snr_db = std::numeric_limits<double>::infinity();
    cli::cmd_simulate(cfg);
    CHECK(read_file(dir.str("blurred.pgm")) == read_file(cfg.input_path));
}

TEST_CASE("deblur: miller parameter is the exact closed form") {
    testsupport::TempDir dir("miller");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 64));
    cli::cmd_simulate(cfg);

    cfg.method = "tikhonov";
    cfg.select = "miller";
    cli::cmd_deblur(cfg);

    json meta = load_json(dir.path() / "noise.json");
    json report = load_json(dir.path() / "report.json");
    double ratio = meta["realized_norm"].get<double>() / meta["true_norm"].get<double>();
    CHECK(report["parameter"].get<double>() == ratio * ratio);
    CHECK(report["method"].get<std::string>() == "tikhonov");
    CHECK(report["criterion"].get<std::string>() == "miller");
}

TEST_CASE("deblur: cg with zero iterations writes an all-black image") {
    testsupport::TempDir dir("cg0");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 32));
    cli::cmd_simulate(cfg);

    cfg.method = "cg";
    cfg.cg_iters = 0;
    cli::cmd_deblur(cfg);

    Image restored = load_pgm(dir.str("restored.pgm"));
    CHECK(testsupport::max_abs(restored) == 0.0);
    CHECK(fs::exists(dir.path() / "trace.csv"));
}

TEST_CASE("deblur: discrepancy-selected tikhonov beats the naive inverse") {
    testsupport::TempDir dir("vs");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 64));
    cfg.radius = 5.0;
    cli::cmd_simulate(cfg);

    cfg.method = "tikhonov";
    cfg.select = "discrepancy";
    double tik_err = cli::cmd_deblur(cfg).relative_error.value();

    cfg.method = "inverse";
    cfg.inverse_tol = 0.0;
    double inv_err = cli::cmd_deblur(cfg).relative_error.value();

    CHECK(tik_err < inv_err);
}

TEST_CASE("sweep-mu CSV shape and monotone residual column") {
    testsupport::TempDir dir("sweepmu");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 64));
    cli::cmd_simulate(cfg);
    cfg.mu_grid_points = 12;
    cli::cmd_sweep_mu(cfg);

    auto rows = load_csv(dir.path() / "sweep_mu.csv");
    REQUIRE(rows.size() == 13);  // header + grid
    CHECK(rows[0] == std::vector<std::string>{"mu", "relative_error", "residual_norm",
                                              "solution_norm"});
    for (std::size_t i = 2; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][2]) >= std::stod(rows[i - 1][2]));
}

TEST_CASE("sweep-mu can save per-point restorations") {
    testsupport::TempDir dir("sweepimg");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 32));
    cli::cmd_simulate(cfg);
    cfg.mu_grid_points = 3;
    cfg.save_sweep_images = true;
    cli::cmd_sweep_mu(cfg);
    for (const char* name : {"restored_mu_000.pgm", "restored_mu_001.pgm", "restored_mu_002.pgm"})
        CHECK(fs::exists(dir.path() / name));
}

TEST_CASE("sweep-iters CSV has one row per iterate and decreasing residuals") {
    testsupport::TempDir dir("sweepk");
    RunConfig cfg = base_config(dir, write_phantom_pgm(dir, 64));
    cli::cmd_simulate(cfg);
    cfg.k_sweep_max = 40;
    cli::cmd_sweep_iters(cfg);

    auto rows = load_csv(dir.path() / "sweep_k.csv");
    REQUIRE(rows.size() == 42);  // header + k = 0..40
    CHECK(rows[0] == std::vector<std::string>{"k", "relative_error", "residual_norm"});
    int argmin = 1;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][2]) < std::stod(rows[i - 1][2]));
        if (std::stod(rows[i][1]) < std::stod(rows[argmin][1])) argmin = int(i);
    }
    CHECK(argmin > 1);  // semi-convergence: not the k=0 row
}

TEST_CASE("compare writes five rows and is byte-deterministic") {
    testsupport::TempDir dir_a("cmp_a");
    testsupport::TempDir dir_b("cmp_b");

    std::string input = write_phantom_pgm(dir_a, 64);
    for (auto* dir : {&dir_a, &dir_b}) {
        RunConfig cfg = base_config(*dir, input);
        cfg.radius = 5.0;
        cli::cmd_simulate(cfg);
        cli::cmd_compare(cfg);
    }

    auto rows = load_csv(dir_a.path() / "table.csv");
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"method", "parameter", "relative_error"});
    CHECK(rows[1][0] == "tikhonov-energy");
    CHECK(rows[2][0] == "tikhonov-discrepancy");
    CHECK(rows[3][0] == "tikhonov-miller");
    CHECK(rows[4][0] == "tikhonov-gcv");
    CHECK(rows[5][0] == "cg-discrepancy");

    CHECK(read_file(dir_a.str("table.csv")) == read_file(dir_b.str("table.csv")));
    CHECK(read_file(dir_a.str("noise.json")) == read_file(dir_b.str("noise.json")));
}

TEST_CASE("blind mode: explicit --g/--psf, no ground truth") {
    testsupport::TempDir sim_dir("blind_sim");
    RunConfig sim_cfg = base_config(sim_dir, write_phantom_pgm(sim_dir, 32));
    cli::cmd_simulate(sim_cfg);

    testsupport::TempDir out_dir("blind_out");
    RunConfig cfg;
    cfg.out_dir = out_dir.str();
    cfg.radius = 3.0;
    cfg.g_path = sim_dir.str("blurred_noisy.pgm");
    cfg.psf_path = sim_dir.str("psf.raw");
    cfg.method = "tikhonov";
    cfg.mu = 1e-3;
    DeblurReport report = cli::cmd_deblur(cfg);

    CHECK_FALSE(report.relative_error.has_value());
    CHECK(fs::exists(out_dir.path() / "restored.pgm"));
    json j = load_json(out_dir.path() / "report.json");
    CHECK(j["relative_error"].is_null());
    CHECK(j["parameter"].get<double>() == 1e-3);
}

TEST_CASE("errors carry one-line diagnostics") {
    testsupport::TempDir dir("err");
    RunConfig cfg = base_config(dir, dir.str("missing.pgm"));
    CHECK_THROWS(cli::cmd_simulate(cfg));

    RunConfig no_sim = base_config(dir, "");
    no_sim.method = "tikhonov";
    no_sim.select = "gcv";
    CHECK_THROWS(cli::cmd_deblur(no_sim));  // simulate outputs absent
}

TEST_CASE("installed binary: grammar smoke test" * doctest::skip(std::getenv("DEBLUR_CLI") == nullptr)) {
    const char* exe = std::getenv("DEBLUR_CLI");
    REQUIRE(exe != nullptr);
    testsupport::TempDir dir("bin");
    std::string input = write_phantom_pgm(dir, 32);

    auto run = [&](const std::string& args) {
        std::string cmd = std::string(exe) + " " + args + " >/dev/null 2>&1";
        return std::system(cmd.c_str());
    };

    CHECK(run("simulate --input " + input + " --out " + dir.str() + " --radius 2") == 0);
    CHECK(run("deblur --input " + input + " --out " + dir.str() +
              " tikhonov --select gcv") == 0);
    CHECK(run("deblur --out " + dir.str() + " tikhonov --mu 0.001") == 0);
    CHECK(run("compare --input " + input + " --out " + dir.str()) == 0);
    CHECK(run("bogus-subcommand") != 0);
    CHECK(run("simulate --out " + dir.str()) != 0);  // missing --input
    CHECK(run("deblur --out " + dir.str() + " tikhonov --mu 0.1 --select gcv") != 0);
    CHECK(run("deblur --out " + dir.str() + " cg --iters 5 --discrepancy") != 0);
}
