#pragma once

#include <Eigen/Dense>

#include "uscrelax/params.hpp"
#include "uscrelax/state.hpp"

namespace uscrelax {

/// Generator of the closed 4x4 system in the printed (a1, a2, a1*, a2*)
/// ordering:
///
///   d/dt (a1,a2,a1*,a2*)^T = M (a1,a2,a1*,a2*)^T
///
/// with M purely imaginary entries (Hermitian dynamics).
Eigen::Matrix4cd build_closed_generator(const PairParams& p);

/// Same with -gamma1 on the a1, a1* rows and -gamma2 on the a2, a2* rows.
Eigen::Matrix4cd build_dissipative_generator(const PairParams& p, const DissipativeParams& d);

/// Total linear generator of system + reservoirs. G = -i W with W real; the
/// state ordering is the internal Layout.
struct TotalGenerator {
    Layout layout;
    Eigen::MatrixXd W;                    // G = -i W
    std::vector<double> omega1, omega2;   // reservoir frequencies
    std::vector<double> g1, g2;           // per-mode couplings g(omega_k)
    std::vector<double> Db, Dc;           // per-mode g^2/(2 omega0), or zero
    int nonpositive_modes = 0;            // diagnostics

    Eigen::MatrixXcd G() const { return Complex(0.0, -1.0) * W; }
};

TotalGenerator build_total_generator(const PairParams& p, const ReservoirParams& r1,
                                     const ReservoirParams& r2);

/// Second-order coordinate form zdd = -K z with z = (x1, x2, y^(1)_k, y^(2)_k).
/// K is real symmetric; the effective couplings are 2 sqrt(omega0 omega_k) g.
/// Requires all reservoir frequencies positive (the coordinate map is singular
/// otherwise).
struct CoordinateSystem {
    Eigen::MatrixXd K;
    std::vector<double> omega1, omega2;
    std::vector<double> gtilde1, gtilde2;
};

CoordinateSystem build_coordinate_generator(const PairParams& p, const ReservoirParams& r1,
                                            const ReservoirParams& r2);

/// Classical energy H_S + H_R + H_SR evaluated on the amplitude averages.
/// Written directly in amplitude variables; identical to the coordinate-form
/// Hamiltonian through the variable map and remains defined for nonpositive
/// reservoir frequencies.
double classical_energy(const TotalState& s, const PairParams& p, const ReservoirParams& r1,
                        const ReservoirParams& r2);

/// Same, with the generator already built (avoids reconstructing couplings).
double classical_energy(const TotalGenerator& tg, const PairParams& p,
                        const Eigen::VectorXcd& amplitudes);

}  // namespace uscrelax
