#pragma once

#include <Eigen/Dense>
#include <vector>

#include "uscrelax/dynamics.hpp"

namespace uscrelax {

struct ModeEstimate {
    double gamma = 0.0;   // decay rate
    double nu = 0.0;      // angular frequency
    Complex amplitude{};  // complex amplitude
};

struct ModeFit {
    std::vector<ModeEstimate> modes;  // sorted by descending |amplitude|
    double residual = 0.0;            // relative RMS of the fit residual
    bool flagged = false;             // residual above threshold or clamped rate
};

/// Fits y(t) ~ sum_j A_j exp((-gamma_j + i nu_j) t) with n_modes complex
/// modes: flat-top-windowed DFT peak picking for the seeds, then
/// variable-projection Levenberg-Marquardt on the (gamma, nu) parameters.
/// Fitted rates in (-1e-9, 0) are clamped to zero; larger negative rates on
/// the dominant pair make estimate_modes throw.
ModeFit fit_damped_modes(const Eigen::VectorXd& t, const Eigen::VectorXcd& y, int n_modes);

/// Per-mode result: the two dominant modes of a1(t) over
/// [0, window_fraction * t_end], taken from the dominant sign group of the
/// spectrum and labeled s/a by descending |frequency|.
struct RatePair {
    double omega_s = 0.0, omega_a = 0.0;
    double gamma_s = 0.0, gamma_a = 0.0;
    double residual = 0.0;
    bool flagged = false;
};

RatePair estimate_modes(const TimeSeries& series, double window_fraction = 0.9, int n_modes = 4);

struct ExpLawFit {
    double gamma0 = 0.0;       // rate at Omega = 0
    double decay_const = 0.0;  // k in gamma(Omega) = gamma0 exp(-k Omega)
    double r_squared = 0.0;
};

/// Linear regression of ln(gamma) against Omega. Rows with nonpositive gamma
/// are rejected (the exception message carries the first offending index).
ExpLawFit fit_exponential_law(const std::vector<std::pair<double, double>>& rows);

}  // namespace uscrelax
