#pragma once

#include <Eigen/Dense>
#include <utility>

#include "uscrelax/params.hpp"
#include "uscrelax/state.hpp"

namespace uscrelax {

/// omega_{s,a} = sqrt(omega0^2 +/- 2 Omega omega0 + 4 Omega^2); omega_s >= omega_a > 0.
std::pair<double, double> mode_frequencies(double omega0, double Omega);

/// Rotating-wave (golden-rule) rate pi g(omega)^2 rho(omega) / delta_omega.
double gamma_rwa(const DispersionLaw& disp, double delta_omega, double omega,
                 double omega0 = 1.0);

/// Gamma^(+/-)(omega) = 4 omega0 omega (gamma1 +/- gamma2), sign = +1 or -1.
double big_gamma(double omega0, double omega_mode, double gamma1_at_mode,
                 double gamma2_at_mode, int sign);

/// Spectral-weight combinations and damping coefficients of the effective
/// two-mode system.
struct AnalyticCoefficients {
    double omega_s = 0.0, omega_a = 0.0;
    double Gamma_s_plus = 0.0, Gamma_a_plus = 0.0;
    double Gamma_s_minus = 0.0, Gamma_a_minus = 0.0;
    double beta_1_1 = 0.0;  // Gamma_s_plus / (8 omega_s^2)
    double beta_2_2 = 0.0;  // Gamma_a_plus / (8 omega_a^2)
    double beta_2_1 = 0.0;  // Gamma_a_minus / (8 omega_s omega_a)
    double beta_1_2 = 0.0;  // Gamma_s_minus / (8 omega_s omega_a)
};

AnalyticCoefficients analytic_coefficients(const PairParams& p, const DispersionLaw& disp1,
                                           const DispersionLaw& disp2, double delta_omega1,
                                           double delta_omega2);

/// Variant with the mode frequencies supplied directly (used for the
/// frequency-scaling analysis).
AnalyticCoefficients analytic_coefficients_at(double omega0, double omega_s, double omega_a,
                                              const DispersionLaw& disp1,
                                              const DispersionLaw& disp2, double delta_omega1,
                                              double delta_omega2);

struct AnalyticResult {
    Complex lambda_s{}, lambda_a{};
    double gamma_s = 0.0, gamma_a = 0.0;  // -Re(lambda)
};

/// Closed-form eigenvalues of the effective dissipative two-mode system, with
/// rates evaluated at the Omega-dependent mode frequencies through the
/// dispersion law. Labels are assigned by eigenvector dominance of the
/// two-mode system and validated against the Omega -> 0 limit.
AnalyticResult analytic_lambda(const PairParams& p, const DispersionLaw& disp1,
                               const DispersionLaw& disp2, double delta_omega1,
                               double delta_omega2);

AnalyticResult analytic_lambda_from(const AnalyticCoefficients& c);

/// The effective 2x2 system matrix in the oscillator (a1, a2) basis, common
/// rotation removed; its eigenvalues equal analytic_lambda output.
Eigen::Matrix2cd effective_2x2(const AnalyticCoefficients& c, double omega_s, double omega_a);

/// Log-log slope of gamma_s under a common scaling of both mode frequencies
/// (rates re-evaluated at the scaled frequencies); equals 2s - 1 for a pure
/// power-law dispersion.
double rate_scaling_exponent(const PairParams& p, const DispersionLaw& disp1,
                             const DispersionLaw& disp2, double delta_omega1,
                             double delta_omega2);

}  // namespace uscrelax
