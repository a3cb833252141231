#include <CLI11.hpp>

#include <fstream>
#include <iostream>

extern "C" void openblas_set_num_threads(int);

#include "uscrelax/runner.hpp"

namespace {

int run_mode(uscrelax::RunMode mode, const std::string& config_path, int jobs,
             const std::string& out_dir, bool emit_config) {
    nlohmann::json j;
    try {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "error: cannot open config file " << config_path << "\n";
            return 2;
        }
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: config parse failure: " << e.what() << "\n";
        return 2;
    }

    uscrelax::RunConfig cfg;
    try {
        cfg = uscrelax::parse_config(j, mode);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (emit_config) {
            std::cout << uscrelax::resolved_config(cfg).dump(2) << "\n";
            return 0;
        }
        // Validate eagerly so config errors exit with 2.
        cfg.grid_values();
        cfg.pair_at(cfg.Omega);
        if (cfg.mode != uscrelax::RunMode::Eigs) {
            cfg.reservoir1.to_params();
            cfg.reservoir2.to_params();
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid config: " << e.what() << "\n";
        return 2;
    }

    try {
        const std::string path = uscrelax::run_and_write(cfg, jobs);
        std::cout << path << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    // Worker-level parallelism only: keeps emitted CSVs bitwise independent
    // of the BLAS thread count.
    openblas_set_num_threads(1);

    CLI::App app{"Relaxation rates of ultra-strongly coupled oscillators with finite reservoirs"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the common options after the subcommand too

    std::string config_path, out_dir;
    int jobs = 1;
    bool emit_config = false;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--jobs", jobs, "Worker pool size for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "Output directory (overrides config)");
    app.add_flag("--emit-config", emit_config, "Print the fully resolved config and exit");

    auto* eigs = app.add_subcommand("eigs", "Dissipative 4x4 eigenvalue sweep over Omega");
    auto* simulate = app.add_subcommand("simulate", "Total-system time trace over [0, T_R]");
    auto* rates = app.add_subcommand("rates", "Numerical vs analytic relaxation-rate sweep");
    auto* compare = app.add_subcommand("compare", "Hermitian vs phenomenological |a1|(t)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    uscrelax::RunMode mode = uscrelax::RunMode::Rates;
    if (eigs->parsed()) mode = uscrelax::RunMode::Eigs;
    if (simulate->parsed()) mode = uscrelax::RunMode::Simulate;
    if (rates->parsed()) mode = uscrelax::RunMode::Rates;
    if (compare->parsed()) mode = uscrelax::RunMode::Compare;

    return run_mode(mode, config_path, jobs, out_dir, emit_config);
}
