#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "uscrelax/params.hpp"
#include "uscrelax/state.hpp"

namespace uscrelax {

struct SpectrumPoint {
    double Omega = 0.0;
    // Branch-continuous across a sweep; within a single point sorted by
    // descending imaginary part, ties broken by real part.
    std::array<Complex, 4> eigenvalues{};
};

struct ExceptionalPoint {
    double Omega_EP = 0.0;
    double gap = 0.0;
    bool found = false;
};

/// Eigenvalues of a 4x4 complex matrix, sorted by descending imaginary part,
/// ties by real part. Throws on non-finite input.
std::array<Complex, 4> eigenvalues4(const Eigen::Matrix4cd& M);

/// Minimal pairwise distance within an eigenvalue set.
double min_eigenvalue_gap(const std::array<Complex, 4>& ev);

/// Eigenvalue branches of the dissipative 4x4 over an ascending Omega grid.
/// D1 = D2 = Omega^2/omega0 is recomputed at every grid point; branches are
/// matched to the previous point by minimal total displacement.
std::vector<SpectrumPoint> sweep_spectrum(const PairParams& base, const DissipativeParams& d,
                                          const std::vector<double>& omega_grid);

/// Locates the coupling that minimizes the minimal eigenvalue gap inside
/// [omega_lo, omega_hi] (coarse scan + golden-section refinement to 1e-8).
/// found == true iff the refined gap is below 1e-4 * omega0.
ExceptionalPoint find_exceptional_point(const PairParams& base, const DissipativeParams& d,
                                        double omega_lo, double omega_hi);

}  // namespace uscrelax
