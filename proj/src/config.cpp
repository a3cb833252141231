#include "uscrelax/config.hpp"

#include <stdexcept>

namespace uscrelax {

ReservoirParams ReservoirConfig::to_params() const {
    DispersionLaw disp;
    disp.exponent_s = exponent_s;
    if (g0 && calibrate_gamma)
        throw std::invalid_argument("reservoir: specify either g0 or calibrate_gamma, not both");
    if (g0)
        disp.g0 = *g0;
    else if (calibrate_gamma)
        disp.g0 = DispersionLaw::calibrate_g0(*calibrate_gamma, delta_omega);
    else
        throw std::invalid_argument("reservoir: one of g0 or calibrate_gamma is required");

    ReservoirParams r(N, delta_omega, disp);
    if (diamagnetic_policy == "full")
        r.diamagnetic_policy = DiamagneticPolicy::Full;
    else if (diamagnetic_policy == "zero")
        r.diamagnetic_policy = DiamagneticPolicy::Zero;
    else
        throw std::invalid_argument("reservoir: diamagnetic_policy must be \"full\" or \"zero\"");
    r.center_band = center_band;
    r.validate();
    return r;
}

PairParams RunConfig::pair_at(double Omega_value) const {
    PairParams p = PairParams::with_default_D(omega0, Omega_value);
    if (D1) p.D1 = *D1;
    if (D2) p.D2 = *D2;
    p.validate();
    return p;
}

std::vector<double> RunConfig::grid_values() const {
    if (omega_grid.count < 1) throw std::invalid_argument("omega_grid.count must be >= 1");
    std::vector<double> v(omega_grid.count);
    if (omega_grid.count == 1) {
        v[0] = omega_grid.start;
    } else {
        for (int i = 0; i < omega_grid.count; ++i)
            v[i] = omega_grid.start +
                   (omega_grid.stop - omega_grid.start) * i / (omega_grid.count - 1);
    }
    return v;
}

namespace {

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config field '" + key + "' has the wrong type");
    }
}

void require_known_keys(const json& j, const std::string& where,
                        std::initializer_list<const char*> known) {
    if (!j.is_object()) throw std::invalid_argument(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw std::invalid_argument("unknown config field '" + where + "." + key + "'");
    }
}

ReservoirConfig parse_reservoir(const json& j, const std::string& where) {
    require_known_keys(j, where,
                       {"N", "delta_omega", "exponent_s", "g0", "calibrate_gamma",
                        "diamagnetic_policy", "center_band"});
    ReservoirConfig r;
    r.N = get_or(j, "N", r.N);
    r.delta_omega = get_or(j, "delta_omega", r.delta_omega);
    r.exponent_s = get_or(j, "exponent_s", r.exponent_s);
    if (j.contains("g0") && !j.at("g0").is_null()) r.g0 = j.at("g0").get<double>();
    if (j.contains("calibrate_gamma") && !j.at("calibrate_gamma").is_null())
        r.calibrate_gamma = j.at("calibrate_gamma").get<double>();
    r.diamagnetic_policy = get_or<std::string>(j, "diamagnetic_policy", r.diamagnetic_policy);
    r.center_band = get_or(j, "center_band", r.center_band);
    return r;
}

}  // namespace

RunConfig parse_config(const json& j, std::optional<RunMode> mode_override) {
    RunConfig cfg;
    require_known_keys(j, "config",
                       {"mode", "pair", "dissipative", "reservoir1", "reservoir2", "omega_grid",
                        "estimation", "simulation", "output"});

    const std::string mode = get_or<std::string>(j, "mode", "rates");
    if (mode == "eigs")
        cfg.mode = RunMode::Eigs;
    else if (mode == "simulate")
        cfg.mode = RunMode::Simulate;
    else if (mode == "rates")
        cfg.mode = RunMode::Rates;
    else if (mode == "compare")
        cfg.mode = RunMode::Compare;
    else
        throw std::invalid_argument("mode must be one of eigs|simulate|rates|compare");
    if (mode_override) cfg.mode = *mode_override;

    if (j.contains("pair")) {
        const json& p = j.at("pair");
        require_known_keys(p, "pair", {"omega0", "Omega", "D1", "D2"});
        cfg.omega0 = get_or(p, "omega0", 1.0);
        cfg.Omega = get_or(p, "Omega", 0.0);
        if (p.contains("D1") && !p.at("D1").is_null()) cfg.D1 = p.at("D1").get<double>();
        if (p.contains("D2") && !p.at("D2").is_null()) cfg.D2 = p.at("D2").get<double>();
    }
    if (j.contains("dissipative")) {
        const json& d = j.at("dissipative");
        require_known_keys(d, "dissipative", {"gamma1", "gamma2"});
        cfg.dissipative.gamma1 = get_or(d, "gamma1", 0.0);
        cfg.dissipative.gamma2 = get_or(d, "gamma2", 0.0);
    }
    if (j.contains("reservoir1")) cfg.reservoir1 = parse_reservoir(j.at("reservoir1"), "reservoir1");
    if (j.contains("reservoir2")) cfg.reservoir2 = parse_reservoir(j.at("reservoir2"), "reservoir2");
    if (j.contains("omega_grid")) {
        const json& g = j.at("omega_grid");
        require_known_keys(g, "omega_grid", {"start", "stop", "count"});
        cfg.omega_grid.start = get_or(g, "start", cfg.omega_grid.start);
        cfg.omega_grid.stop = get_or(g, "stop", cfg.omega_grid.stop);
        cfg.omega_grid.count = get_or(g, "count", cfg.omega_grid.count);
    }
    if (j.contains("estimation")) {
        const json& e = j.at("estimation");
        require_known_keys(e, "estimation", {"window_fraction", "n_modes"});
        cfg.window_fraction = get_or(e, "window_fraction", cfg.window_fraction);
        cfg.n_modes = get_or(e, "n_modes", cfg.n_modes);
    }
    if (j.contains("simulation")) {
        const json& s = j.at("simulation");
        require_known_keys(s, "simulation", {"samples_per_period", "engine"});
        cfg.samples_per_period = get_or(s, "samples_per_period", cfg.samples_per_period);
        cfg.engine = get_or<std::string>(s, "engine", cfg.engine);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        require_known_keys(o, "output", {"dir", "basename"});
        cfg.out_dir = get_or<std::string>(o, "dir", cfg.out_dir);
        cfg.basename = get_or<std::string>(o, "basename", cfg.basename);
    }
    return cfg;
}

json resolved_config(const RunConfig& cfg) {
    auto res_json = [](const ReservoirConfig& r) {
        json j{{"N", r.N},
               {"delta_omega", r.delta_omega},
               {"exponent_s", r.exponent_s},
               {"diamagnetic_policy", r.diamagnetic_policy},
               {"center_band", r.center_band}};
        j["g0"] = r.g0 ? json(*r.g0) : json(nullptr);
        j["calibrate_gamma"] = r.calibrate_gamma ? json(*r.calibrate_gamma) : json(nullptr);
        if (r.g0 || r.calibrate_gamma) j["g0_effective"] = r.to_params().dispersion.g0;
        return j;
    };
    const char* mode_names[] = {"eigs", "simulate", "rates", "compare"};
    json j;
    j["mode"] = mode_names[static_cast<int>(cfg.mode)];
    j["pair"] = {{"omega0", cfg.omega0},
                 {"Omega", cfg.Omega},
                 {"D1", cfg.D1 ? json(*cfg.D1) : json(nullptr)},
                 {"D2", cfg.D2 ? json(*cfg.D2) : json(nullptr)},
                 {"D_policy", "D = Omega^2/omega0 unless overridden"}};
    j["dissipative"] = {{"gamma1", cfg.dissipative.gamma1}, {"gamma2", cfg.dissipative.gamma2}};
    j["reservoir1"] = res_json(cfg.reservoir1);
    j["reservoir2"] = res_json(cfg.reservoir2);
    j["omega_grid"] = {{"start", cfg.omega_grid.start},
                       {"stop", cfg.omega_grid.stop},
                       {"count", cfg.omega_grid.count}};
    j["estimation"] = {{"window_fraction", cfg.window_fraction},
                       {"n_modes", cfg.n_modes},
                       {"route", "fft-seeded least squares"}};
    j["simulation"] = {{"samples_per_period", cfg.samples_per_period}, {"engine", cfg.engine}};
    j["output"] = {{"dir", cfg.out_dir}, {"basename", cfg.basename}};
    return j;
}

}  // namespace uscrelax
