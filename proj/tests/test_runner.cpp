#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "uscrelax/runner.hpp"

using namespace uscrelax;

namespace {

RunConfig small_base() {
    RunConfig cfg;
    cfg.dissipative = {0.02, 0.01};
    cfg.reservoir1.N = 40;
    cfg.reservoir1.delta_omega = 0.05;
    cfg.reservoir1.calibrate_gamma = 0.02;
    cfg.reservoir2 = cfg.reservoir1;
    cfg.reservoir2.calibrate_gamma = 0.01;
    return cfg;
}

}  // namespace

TEST_CASE("format_float survives a 17-significant-digit round trip") {
    for (double v : {1.0 / 3.0, 0.1, -2.5e-7, 6.02214076e23, 0.0}) {
        CHECK(std::stod(format_float(v)) == v);
    }
}

TEST_CASE("write_csv applies RFC-4180 quoting") {
    const std::string path = std::filesystem::temp_directory_path() / "uscrelax_csv_test.csv";
    write_csv(path, {"a", "b"}, {{"1", "he said \"hi\", twice"}});
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "a,b");
    CHECK(row == "1,\"he said \"\"hi\"\", twice\"");
    std::filesystem::remove(path);
}

TEST_CASE("run_eigs reports the exceptional point in metadata") {
    RunConfig cfg = small_base();
    cfg.mode = RunMode::Eigs;
    cfg.dissipative = {0.2, 0.01};
    cfg.omega_grid = {0.0, 0.4, 41};
    json meta;
    auto pts = run_eigs(cfg, meta);
    CHECK(pts.size() == 41);
    REQUIRE(meta.contains("exceptional_point"));
    CHECK(meta["exceptional_point"]["found"].get<bool>());
    CHECK(meta["exceptional_point"]["Omega_EP"].get<double>() == doctest::Approx(0.0968).epsilon(1e-2));
}

TEST_CASE("run_compare: lossless decoupled models coincide") {
    RunConfig cfg = small_base();
    cfg.mode = RunMode::Compare;
    cfg.Omega = 0.3;
    cfg.dissipative = {0.0, 0.0};
    cfg.reservoir1.calibrate_gamma = 0.0;
    cfg.reservoir2.calibrate_gamma = 0.0;
    auto res = run_compare(cfg);
    REQUIRE(res.hermitian.times.size() == res.dissipative.times.size());
    CHECK((res.hermitian.a1 - res.dissipative.a1).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(res.envelope_rms < 1e-8);
}

TEST_CASE("run_rates: decoupled reservoirs give vanishing numeric rates") {
    RunConfig cfg = small_base();
    cfg.reservoir1.calibrate_gamma = 0.0;
    cfg.reservoir2.calibrate_gamma = 0.0;
    cfg.omega_grid = {0.2, 0.6, 3};
    auto res = run_rates(cfg, 3);
    REQUIRE(res.rows.size() == 3);
    for (const auto& row : res.rows) {
        const json diag = json::parse(row.diagnostics);
        CHECK_FALSE(diag.contains("estimator_error"));
        CHECK(row.gamma_s_num < 1e-9);
        CHECK(row.gamma_a_num < 1e-9);
        CHECK(row.gamma_s_analytic < 1e-15);
    }
}

TEST_CASE("run_rates is deterministic across jobs counts") {
    RunConfig cfg = small_base();
    // keep omega_s inside the N = 40 band (top edge 2.0)
    cfg.omega_grid = {0.2, 0.6, 3};
    auto a = run_rates(cfg, 1);
    auto b = run_rates(cfg, 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].Omega == b.rows[i].Omega);
        CHECK(a.rows[i].gamma_s_num == b.rows[i].gamma_s_num);  // bitwise
        CHECK(a.rows[i].gamma_a_num == b.rows[i].gamma_a_num);
        CHECK(a.rows[i].run_id == b.rows[i].run_id);
    }
}

TEST_CASE("run_and_write emits the CSV, metadata sidecar and plot script") {
    RunConfig cfg = small_base();
    cfg.mode = RunMode::Eigs;
    cfg.omega_grid = {0.0, 0.5, 5};
    auto dir = std::filesystem::temp_directory_path() / "uscrelax_run_test";
    std::filesystem::remove_all(dir);
    cfg.out_dir = dir.string();
    cfg.basename = "t";
    const std::string path = run_and_write(cfg);
    CHECK(std::filesystem::exists(path));
    CHECK(std::filesystem::exists(path + ".meta.json"));
    CHECK(std::filesystem::exists(dir / "t_eigs.gp"));
    json meta = json::parse(std::ifstream(path + ".meta.json"));
    CHECK(meta.contains("config"));
    std::filesystem::remove_all(dir);
}
