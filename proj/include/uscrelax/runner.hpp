#pragma once

#include <string>
#include <vector>

#include "uscrelax/analytic.hpp"
#include "uscrelax/config.hpp"
#include "uscrelax/estimation.hpp"
#include "uscrelax/spectrum.hpp"

namespace uscrelax {

/// One sweep-table row. Numerical columns are NaN when the estimator failed
/// for that row; the error text lands in `diagnostics`.
struct SweepRow {
    double Omega = 0.0;
    double gamma_s_num = 0.0, gamma_a_num = 0.0;
    double gamma_s_analytic = 0.0, gamma_a_analytic = 0.0;
    double omega_s_meas = 0.0, omega_a_meas = 0.0;
    double fit_residual = 0.0;
    std::string run_id;
    std::string diagnostics;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    json metadata;
};

SweepResult run_rates(const RunConfig& cfg, int jobs = 1);
std::vector<SpectrumPoint> run_eigs(const RunConfig& cfg, json& metadata);

struct CompareResult {
    TimeSeries hermitian;
    TimeSeries dissipative;
    double envelope_rms = 0.0;  // over [0, 0.8 T_R]
    json metadata;
};

CompareResult run_compare(const RunConfig& cfg);

/// Executes cfg.mode, writes CSV + metadata sidecar (+ a gnuplot script) into
/// cfg.out_dir, and returns the primary CSV path.
std::string run_and_write(const RunConfig& cfg, int jobs = 1);

/// Shortest-format float with 17 significant digits.
std::string format_float(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace uscrelax
