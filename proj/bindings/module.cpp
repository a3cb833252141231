// Python bindings for the main operations: simulation, spectral sweeps, rate
// estimation, the closed-form rates, and config-driven runs.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uscrelax/analytic.hpp"
#include "uscrelax/dynamics.hpp"
#include "uscrelax/estimation.hpp"
#include "uscrelax/runner.hpp"
#include "uscrelax/spectrum.hpp"

namespace py = pybind11;
using namespace uscrelax;

extern "C" void openblas_set_num_threads(int);

namespace {

DispersionLaw make_dispersion(std::optional<double> g0, std::optional<double> calibrate_gamma,
                              double s, double delta_omega) {
    if (g0.has_value() == calibrate_gamma.has_value())
        throw std::invalid_argument("specify exactly one of g0 / calibrate_gamma");
    DispersionLaw d;
    d.exponent_s = s;
    d.g0 = g0 ? *g0 : DispersionLaw::calibrate_g0(*calibrate_gamma, delta_omega);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Relaxation of two strongly coupled oscillators in finite reservoirs";
    openblas_set_num_threads(1);

    py::class_<PairParams>(m, "PairParams")
        .def(py::init<double, double, double, double>(), py::arg("omega0"), py::arg("Omega"),
             py::arg("D1"), py::arg("D2"))
        .def_static("with_default_D", &PairParams::with_default_D, py::arg("omega0"),
                    py::arg("Omega"))
        .def_readwrite("omega0", &PairParams::omega0)
        .def_readwrite("Omega", &PairParams::Omega)
        .def_readwrite("D1", &PairParams::D1)
        .def_readwrite("D2", &PairParams::D2)
        .def("stability_bound", &PairParams::stability_bound);

    py::class_<DissipativeParams>(m, "DissipativeParams")
        .def(py::init<double, double>(), py::arg("gamma1"), py::arg("gamma2"))
        .def_readwrite("gamma1", &DissipativeParams::gamma1)
        .def_readwrite("gamma2", &DissipativeParams::gamma2);

    py::class_<ReservoirParams>(m, "ReservoirParams")
        .def(py::init([](int N, double delta_omega, std::optional<double> g0,
                         std::optional<double> calibrate_gamma, double exponent_s,
                         bool diamagnetic) {
                 ReservoirParams r(N, delta_omega,
                                   make_dispersion(g0, calibrate_gamma, exponent_s, delta_omega),
                                   diamagnetic ? DiamagneticPolicy::Full
                                               : DiamagneticPolicy::Zero);
                 r.validate();
                 return r;
             }),
             py::arg("N"), py::arg("delta_omega"), py::arg("g0") = std::nullopt,
             py::arg("calibrate_gamma") = std::nullopt, py::arg("exponent_s") = 0.0,
             py::arg("diamagnetic") = true)
        .def_readonly("N", &ReservoirParams::N)
        .def_readonly("delta_omega", &ReservoirParams::delta_omega)
        .def_property_readonly("g0",
                               [](const ReservoirParams& r) { return r.dispersion.g0; })
        .def_property_readonly(
            "exponent_s", [](const ReservoirParams& r) { return r.dispersion.exponent_s; })
        .def("frequencies",
             [](const ReservoirParams& r, double omega0) {
                 return reservoir_frequencies(r, omega0);
             },
             py::arg("omega0") = 1.0);

    py::class_<TimeSeries>(m, "TimeSeries")
        .def_readonly("times", &TimeSeries::times)
        .def_readonly("a1", &TimeSeries::a1)
        .def_readonly("a2", &TimeSeries::a2)
        .def_readonly("energy", &TimeSeries::energy)
        .def_readonly("conjugacy_dev", &TimeSeries::conjugacy_dev)
        .def_readonly("energy_drift", &TimeSeries::energy_drift)
        .def_readonly("t_revival", &TimeSeries::t_revival);

    py::class_<RatePair>(m, "RatePair")
        .def_readonly("omega_s", &RatePair::omega_s)
        .def_readonly("omega_a", &RatePair::omega_a)
        .def_readonly("gamma_s", &RatePair::gamma_s)
        .def_readonly("gamma_a", &RatePair::gamma_a)
        .def_readonly("residual", &RatePair::residual)
        .def_readonly("flagged", &RatePair::flagged);

    py::class_<AnalyticResult>(m, "AnalyticResult")
        .def_readonly("lambda_s", &AnalyticResult::lambda_s)
        .def_readonly("lambda_a", &AnalyticResult::lambda_a)
        .def_readonly("gamma_s", &AnalyticResult::gamma_s)
        .def_readonly("gamma_a", &AnalyticResult::gamma_a);

    py::class_<ExceptionalPoint>(m, "ExceptionalPoint")
        .def_readonly("Omega_EP", &ExceptionalPoint::Omega_EP)
        .def_readonly("gap", &ExceptionalPoint::gap)
        .def_readonly("found", &ExceptionalPoint::found);

    m.def("mode_frequencies", &mode_frequencies, py::arg("omega0"), py::arg("Omega"),
          "omega_{s,a} of the closed two-oscillator system");

    m.def(
        "simulate_pair",
        [](const PairParams& p, const ReservoirParams& r1, const ReservoirParams& r2,
           int samples_per_period) {
            return simulate_pair(p, r1, r2, std::nullopt, samples_per_period);
        },
        py::arg("pair"), py::arg("reservoir1"), py::arg("reservoir2"),
        py::arg("samples_per_period") = 32,
        py::call_guard<py::gil_scoped_release>(),
        "Hermitian mean-field trajectory of system + reservoirs over one revival time");

    m.def("simulate_dissipative", &simulate_dissipative, py::arg("pair"), py::arg("dissipative"),
          py::arg("t_grid"), py::call_guard<py::gil_scoped_release>(),
          "Phenomenological dissipative 4x4 trajectory on the given time grid");

    m.def("estimate_modes", &estimate_modes, py::arg("series"),
          py::arg("window_fraction") = 0.9, py::arg("n_modes") = 4,
          "Decay rates and frequencies of the two dominant modes of a1(t)");

    m.def(
        "analytic_rates",
        [](const PairParams& p, const ReservoirParams& r1, const ReservoirParams& r2) {
            return analytic_lambda(p, r1.dispersion, r2.dispersion, r1.delta_omega,
                                   r2.delta_omega);
        },
        py::arg("pair"), py::arg("reservoir1"), py::arg("reservoir2"),
        "Closed-form eigenvalues of the effective dissipative two-mode system");

    m.def(
        "sweep_spectrum",
        [](const PairParams& base, const DissipativeParams& d,
           const std::vector<double>& grid) {
            py::list out;
            for (const auto& pt : sweep_spectrum(base, d, grid))
                out.append(py::make_tuple(pt.Omega, pt.eigenvalues));
            return out;
        },
        py::arg("base"), py::arg("dissipative"), py::arg("omega_grid"),
        "Branch-continuous eigenvalues of the dissipative 4x4 over a coupling grid");

    m.def("find_exceptional_point", &find_exceptional_point, py::arg("base"),
          py::arg("dissipative"), py::arg("omega_lo"), py::arg("omega_hi"));

    m.def("envelope", &envelope, py::arg("times"), py::arg("y"),
          "Upper envelope of |y|(t), interpolated onto the full grid");

    m.def("revival_time", &revival_time, py::arg("reservoir"));

    m.def(
        "run_config",
        [](const std::string& config_json, int jobs, const std::string& out_dir) {
            RunConfig cfg = parse_config(json::parse(config_json));
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            return run_and_write(cfg, jobs);
        },
        py::arg("config_json"), py::arg("jobs") = 1, py::arg("out_dir") = "",
        "Execute a JSON run configuration; returns the primary CSV path");
}
