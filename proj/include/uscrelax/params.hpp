#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uscrelax {

// All quantities are expressed in units of the oscillator frequency omega0,
// which defaults to 1 internally.

/// Parameters of the two coupled oscillators: frequencies, coupling and the
/// quadratic (diamagnetic) coefficients D1, D2. Boundedness of the energy
/// requires D >= Omega^2 / (2 omega0); the analytic-model choice used as the
/// default is D1 = D2 = Omega^2 / omega0.
struct PairParams {
    double omega0 = 1.0;
    double Omega = 0.0;
    double D1 = 0.0;
    double D2 = 0.0;

    PairParams() = default;
    PairParams(double omega0_, double Omega_, double D1_, double D2_)
        : omega0(omega0_), Omega(Omega_), D1(D1_), D2(D2_) {}

    /// PairParams with the default diamagnetic policy D1 = D2 = Omega^2/omega0.
    static PairParams with_default_D(double omega0, double Omega) {
        double D = Omega * Omega / omega0;
        return PairParams(omega0, Omega, D, D);
    }

    double stability_bound() const { return Omega * Omega / (2.0 * omega0); }

    void validate() const {
        if (!(omega0 > 0.0)) throw std::invalid_argument("PairParams: omega0 must be positive");
        if (!(Omega >= 0.0)) throw std::invalid_argument("PairParams: Omega must be nonnegative");
        const double bound = stability_bound();
        const double tol = 1e-12 * std::max(1.0, bound);
        if (D1 < bound - tol || D2 < bound - tol)
            throw std::invalid_argument(
                "PairParams: D1, D2 must satisfy the stability bound D >= Omega^2/(2 omega0)");
        if (!std::isfinite(D1) || !std::isfinite(D2))
            throw std::invalid_argument("PairParams: non-finite diamagnetic coefficient");
    }
};

/// Power-law coupling dispersion g(omega) = g0 * |omega/omega0|^s with an
/// optional density-of-states weight rho(omega) (defaults to 1).
///
/// The even extension |omega|^s keeps g defined on reservoir modes with
/// nonpositive frequency; a sign flip of any single g_k is a gauge
/// transformation of that reservoir mode and does not change the system
/// dynamics.
struct DispersionLaw {
    double g0 = 0.0;
    double exponent_s = 0.0;
    std::function<double(double)> rho;  // null -> rho == 1

    DispersionLaw() = default;
    DispersionLaw(double g0_, double s) : g0(g0_), exponent_s(s) {}

    double g(double omega, double omega0) const {
        if (exponent_s == 0.0) return g0;
        return g0 * std::pow(std::abs(omega / omega0), exponent_s);
    }

    double density(double omega) const { return rho ? rho(omega) : 1.0; }

    /// g0 such that the flat-band rate pi g0^2 rho / delta_omega equals gamma
    /// at omega = omega0.
    static double calibrate_g0(double gamma, double delta_omega) {
        if (!(gamma >= 0.0) || !(delta_omega > 0.0))
            throw std::invalid_argument("calibrate_g0: need gamma >= 0 and delta_omega > 0");
        return std::sqrt(gamma * delta_omega / M_PI);
    }
};

enum class DiamagneticPolicy { Full, Zero };  // Full: D = g^2 / (2 omega0)

/// One finite reservoir: N oscillators at omega_k = omega0 + delta_omega*(k - N/2),
/// k = 1..N. `center_band` switches the offset to k - (N+1)/2, which centers
/// the band exactly at omega0.
struct ReservoirParams {
    int N = 0;
    double delta_omega = 0.0;
    DispersionLaw dispersion;
    DiamagneticPolicy diamagnetic_policy = DiamagneticPolicy::Full;
    bool center_band = false;

    ReservoirParams() = default;
    ReservoirParams(int N_, double dw, DispersionLaw disp,
                    DiamagneticPolicy pol = DiamagneticPolicy::Full)
        : N(N_), delta_omega(dw), dispersion(std::move(disp)), diamagnetic_policy(pol) {}

    void validate() const {
        if (N <= 0) throw std::invalid_argument("ReservoirParams: N must be positive");
        if (!(delta_omega > 0.0))
            throw std::invalid_argument("ReservoirParams: delta_omega must be positive");
    }
};

struct DissipativeParams {
    double gamma1 = 0.0;
    double gamma2 = 0.0;

    DissipativeParams() = default;
    DissipativeParams(double g1, double g2) : gamma1(g1), gamma2(g2) {}

    void validate() const {
        if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0))
            throw std::invalid_argument("DissipativeParams: gamma1, gamma2 must be nonnegative");
    }
};

/// omega_k = omega0 + delta_omega*(k - N/2), k = 1..N, ascending.
std::vector<double> reservoir_frequencies(const ReservoirParams& res, double omega0);

/// Number of nonpositive entries; reported as a diagnostic, never an error.
int count_nonpositive(const std::vector<double>& freqs);

}  // namespace uscrelax
