#include "uscrelax/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "uscrelax/dynamics.hpp"

namespace uscrelax {

namespace fs = std::filesystem;

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// RFC 4180: quote only fields containing separators/quotes.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_meta(const std::string& csv_path, const json& meta) {
    std::ofstream f(csv_path + ".meta.json");
    f << meta.dump(2) << "\n";
}

void write_plot_script(const std::string& csv_path, const std::string& script) {
    const std::string path = csv_path.substr(0, csv_path.rfind('.')) + ".gp";
    std::ofstream f(path);
    f << script;
}

json base_metadata(const RunConfig& cfg) {
    json meta;
    meta["config"] = resolved_config(cfg);
    meta["code_version"] = "uscrelax 0.1.0";
    return meta;
}

Engine engine_from(const std::string& name) {
    if (name == "auto") return Engine::Auto;
    if (name == "spectral") return Engine::Spectral;
    if (name == "stepper") return Engine::Stepper;
    throw std::invalid_argument("simulation.engine must be auto|spectral|stepper");
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    for (size_t i = 0; i < header.size(); ++i)
        f << (i ? "," : "") << csv_field(header[i]);
    f << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << csv_field(row[i]);
        f << "\n";
    }
}

std::vector<SpectrumPoint> run_eigs(const RunConfig& cfg, json& metadata) {
    cfg.dissipative.validate();
    PairParams base = cfg.pair_at(0.0);
    const std::vector<double> grid = cfg.grid_values();
    auto points = sweep_spectrum(base, cfg.dissipative, grid);

    metadata = base_metadata(cfg);
    metadata["D_policy_note"] = "D1 = D2 = Omega^2/omega0 recomputed per grid point";
    if (grid.size() > 1 && cfg.dissipative.gamma1 != cfg.dissipative.gamma2) {
        const ExceptionalPoint ep =
            find_exceptional_point(base, cfg.dissipative, grid.front(), grid.back());
        metadata["exceptional_point"] = {
            {"found", ep.found}, {"Omega_EP", ep.Omega_EP}, {"gap", ep.gap}};
    }
    return points;
}

SweepResult run_rates(const RunConfig& cfg, int jobs) {
    const std::vector<double> grid = cfg.grid_values();
    const ReservoirParams r1 = cfg.reservoir1.to_params();
    const ReservoirParams r2 = cfg.reservoir2.to_params();
    const Engine engine = engine_from(cfg.engine);

    SweepResult result;
    result.rows.resize(grid.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            SweepRow& row = result.rows[i];
            row.Omega = grid[i];
            row.run_id = cfg.basename + "-" + std::to_string(i);
            try {
                const PairParams p = cfg.pair_at(grid[i]);
                const TimeSeries ts = simulate_pair(p, r1, r2, std::nullopt,
                                                    cfg.samples_per_period, engine);
                const AnalyticResult ar = analytic_lambda(p, r1.dispersion, r2.dispersion,
                                                          r1.delta_omega, r2.delta_omega);
                row.gamma_s_analytic = ar.gamma_s;
                row.gamma_a_analytic = ar.gamma_a;

                json diag;
                diag["nonpositive_reservoir_modes"] =
                    count_nonpositive(reservoir_frequencies(r1, p.omega0)) +
                    count_nonpositive(reservoir_frequencies(r2, p.omega0));
                diag["energy_drift"] = ts.energy_drift;
                diag["conjugacy_dev"] = ts.conjugacy_dev;

                try {
                    const RatePair rp = estimate_modes(ts, cfg.window_fraction, cfg.n_modes);
                    row.gamma_s_num = rp.gamma_s;
                    row.gamma_a_num = rp.gamma_a;
                    row.omega_s_meas = rp.omega_s;
                    row.omega_a_meas = rp.omega_a;
                    row.fit_residual = rp.residual;
                    if (rp.flagged) diag["estimator_flagged"] = true;
                } catch (const std::exception& e) {
                    row.gamma_s_num = row.gamma_a_num = std::nan("");
                    row.omega_s_meas = row.omega_a_meas = std::nan("");
                    row.fit_residual = std::nan("");
                    diag["estimator_error"] = e.what();
                }
                row.diagnostics = diag.dump();
            } catch (const std::exception& e) {
                row.gamma_s_num = row.gamma_a_num = std::nan("");
                row.gamma_s_analytic = row.gamma_a_analytic = std::nan("");
                row.diagnostics = json{{"error", e.what()}}.dump();
            }
        }
    };

    const int nw = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int i = 1; i < nw; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    result.metadata = base_metadata(cfg);
    result.metadata["revival_time"] = revival_time(r1);

    // Exponential-law summary for the flat-dispersion case, fitted on the
    // upper half of the grid where the law is stated to hold.
    if (cfg.reservoir1.exponent_s == 0.0 && cfg.reservoir2.exponent_s == 0.0) {
        for (const char* which : {"s", "a"}) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& row : result.rows) {
                const double g = (which[0] == 's') ? row.gamma_s_num : row.gamma_a_num;
                if (row.Omega >= 0.5 * cfg.omega0 && std::isfinite(g) && g > 0.0)
                    pts.emplace_back(row.Omega, g);
            }
            if (pts.size() >= 4) {
                const ExpLawFit f = fit_exponential_law(pts);
                result.metadata[std::string("exp_law_fit_") + which] = {
                    {"gamma0", f.gamma0},
                    {"decay_const", f.decay_const},
                    {"r_squared", f.r_squared}};
            }
        }
    }
    return result;
}

CompareResult run_compare(const RunConfig& cfg) {
    cfg.dissipative.validate();
    const ReservoirParams r1 = cfg.reservoir1.to_params();
    const ReservoirParams r2 = cfg.reservoir2.to_params();
    const PairParams p = cfg.pair_at(cfg.Omega);

    CompareResult cr;
    cr.hermitian =
        simulate_pair(p, r1, r2, std::nullopt, cfg.samples_per_period, engine_from(cfg.engine));
    cr.dissipative = simulate_dissipative(p, cfg.dissipative, cr.hermitian.times);

    const Eigen::VectorXd env_h = envelope(cr.hermitian.times, cr.hermitian.a1);
    const Eigen::VectorXd env_d = envelope(cr.dissipative.times, cr.dissipative.a1);
    cr.envelope_rms =
        relative_rms(cr.hermitian.times, env_h, env_d, 0.8 * cr.hermitian.t_revival);

    cr.metadata = base_metadata(cfg);
    cr.metadata["revival_time"] = cr.hermitian.t_revival;
    cr.metadata["envelope_rms_0_0.8TR"] = cr.envelope_rms;
    cr.metadata["energy_drift"] = cr.hermitian.energy_drift;
    cr.metadata["conjugacy_dev"] = cr.hermitian.conjugacy_dev;
    return cr;
}

std::string run_and_write(const RunConfig& cfg, int jobs) {
    fs::create_directories(cfg.out_dir);
    const std::string base = (fs::path(cfg.out_dir) / cfg.basename).string();

    switch (cfg.mode) {
        case RunMode::Eigs: {
            json meta;
            const auto points = run_eigs(cfg, meta);
            std::vector<std::vector<std::string>> rows;
            for (const auto& pt : points) {
                std::vector<std::string> r{format_float(pt.Omega)};
                for (int i = 0; i < 4; ++i) r.push_back(format_float(pt.eigenvalues[i].real()));
                for (int i = 0; i < 4; ++i) r.push_back(format_float(pt.eigenvalues[i].imag()));
                rows.push_back(std::move(r));
            }
            const std::string path = base + "_eigs.csv";
            write_csv(path, {"Omega", "re1", "re2", "re3", "re4", "im1", "im2", "im3", "im4"},
                      rows);
            write_meta(path, meta);
            write_plot_script(path,
                              "set datafile separator ','\n"
                              "set key autotitle columnhead\n"
                              "set xlabel 'Omega/omega0'\nset ylabel 'Re lambda'\n"
                              "plot for [i=2:5] '" + path + "' using 1:i with lines\n");
            return path;
        }
        case RunMode::Simulate: {
            const ReservoirParams r1 = cfg.reservoir1.to_params();
            const ReservoirParams r2 = cfg.reservoir2.to_params();
            const PairParams p = cfg.pair_at(cfg.Omega);
            const TimeSeries ts = simulate_pair(p, r1, r2, std::nullopt, cfg.samples_per_period,
                                                engine_from(cfg.engine));
            std::vector<std::vector<std::string>> rows;
            for (Eigen::Index i = 0; i < ts.times.size(); ++i)
                rows.push_back({format_float(ts.times(i)), format_float(ts.a1(i).real()),
                                format_float(ts.a1(i).imag()), format_float(ts.a2(i).real()),
                                format_float(ts.a2(i).imag()), format_float(ts.energy(i))});
            const std::string path = base + "_timeseries.csv";
            write_csv(path, {"t", "re_a1", "im_a1", "re_a2", "im_a2", "energy"}, rows);
            json meta = base_metadata(cfg);
            meta["revival_time"] = ts.t_revival;
            meta["energy_drift"] = ts.energy_drift;
            meta["conjugacy_dev"] = ts.conjugacy_dev;
            write_meta(path, meta);
            write_plot_script(path,
                              "set datafile separator ','\n"
                              "set key autotitle columnhead\n"
                              "set xlabel 't [1/omega0]'\nset ylabel '|a1|'\n"
                              "plot '" + path + "' using 1:(sqrt($2**2+$3**2)) with lines\n");
            return path;
        }
        case RunMode::Rates: {
            const SweepResult res = run_rates(cfg, jobs);
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : res.rows)
                rows.push_back({format_float(r.Omega), format_float(r.gamma_s_num),
                                format_float(r.gamma_a_num), format_float(r.gamma_s_analytic),
                                format_float(r.gamma_a_analytic), format_float(r.omega_s_meas),
                                format_float(r.omega_a_meas), format_float(r.fit_residual),
                                r.run_id, r.diagnostics});
            const std::string path = base + "_rates.csv";
            write_csv(path,
                      {"Omega", "gamma_s_num", "gamma_a_num", "gamma_s_analytic",
                       "gamma_a_analytic", "omega_s_meas", "omega_a_meas", "fit_residual",
                       "run_id", "diagnostics"},
                      rows);
            write_meta(path, res.metadata);
            write_plot_script(path,
                              "set datafile separator ','\n"
                              "set key autotitle columnhead\n"
                              "set xlabel 'Omega/omega0'\nset ylabel 'gamma/omega0'\n"
                              "plot for [i=2:5] '" + path + "' using 1:i with linespoints\n");
            return path;
        }
        case RunMode::Compare: {
            const CompareResult cr = run_compare(cfg);
            std::vector<std::vector<std::string>> rows;
            for (Eigen::Index i = 0; i < cr.hermitian.times.size(); ++i)
                rows.push_back({format_float(cr.hermitian.times(i)),
                                format_float(std::abs(cr.hermitian.a1(i))),
                                format_float(std::abs(cr.dissipative.a1(i)))});
            const std::string path = base + "_compare.csv";
            write_csv(path, {"t", "abs_a1_hermitian", "abs_a1_dissipative"}, rows);
            write_meta(path, cr.metadata);
            write_plot_script(path,
                              "set datafile separator ','\n"
                              "set key autotitle columnhead\n"
                              "set xlabel 't [1/omega0]'\nset ylabel '|a1|'\n"
                              "plot '" + path + "' using 1:2 with lines, '' using 1:3 with lines\n");
            return path;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace uscrelax
