#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "uscrelax/params.hpp"

namespace uscrelax {

using nlohmann::json;

enum class RunMode { Eigs, Simulate, Rates, Compare };

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int count = 21;
};

struct ReservoirConfig {
    // Default band [-0.73, 2.75] omega0: wide enough to keep omega_s(Omega =
    // omega0) = sqrt(7) omega0 inside it, while the lower edge stays clear of
    // -omega0 where pair-creation terms would trap the excitation.
    int N = 175;
    double delta_omega = 0.02;
    double exponent_s = 0.0;
    // Either g0 directly or a target gamma to invert through
    // gamma = pi g0^2 / delta_omega.
    std::optional<double> g0;
    std::optional<double> calibrate_gamma;
    std::string diamagnetic_policy = "full";  // "full" | "zero"
    bool center_band = false;

    ReservoirParams to_params() const;
};

struct RunConfig {
    RunMode mode = RunMode::Rates;
    double omega0 = 1.0;
    double Omega = 0.0;                       // for simulate/compare
    std::optional<double> D1, D2;             // default: Omega^2/omega0
    DissipativeParams dissipative{0.0, 0.0};
    ReservoirConfig reservoir1, reservoir2;
    GridSpec omega_grid;
    double window_fraction = 0.9;
    int n_modes = 4;
    int samples_per_period = 32;
    std::string engine = "auto";  // "auto" | "spectral" | "stepper"
    std::string out_dir = ".";
    std::string basename = "run";

    PairParams pair_at(double Omega_value) const;
    std::vector<double> grid_values() const;
};

RunConfig parse_config(const json& j, std::optional<RunMode> mode_override = std::nullopt);

/// The fully materialized configuration (all defaults resolved).
json resolved_config(const RunConfig& cfg);

}  // namespace uscrelax
