#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "uscrelax/params.hpp"

namespace uscrelax {

using Complex = std::complex<double>;

/// Index layout of the amplitude state vector:
///   (a1, a1*, a2, a2*, b_1..b_N1, b*_1..b*_N1, c_1..c_N2, c*_1..c*_N2)
/// This is the one canonical internal ordering; the 4x4 generators are exposed
/// in the printed (a1, a2, a1*, a2*) ordering, see system_permutation().
struct Layout {
    int N1 = 0;
    int N2 = 0;

    static constexpr int a1 = 0;
    static constexpr int a1s = 1;
    static constexpr int a2 = 2;
    static constexpr int a2s = 3;

    int dim() const { return 4 + 2 * N1 + 2 * N2; }
    int b(int k) const { return 4 + k; }                 // k = 0..N1-1
    int bs(int k) const { return 4 + N1 + k; }
    int c(int k) const { return 4 + 2 * N1 + k; }        // k = 0..N2-1
    int cs(int k) const { return 4 + 2 * N1 + N2 + k; }

    /// Index of the conjugate partner (a <-> a*, b <-> b*, ...).
    int conj_partner(int i) const;

    /// Permutation taking the internal (a1, a1*, a2, a2*) system block to the
    /// printed (a1, a2, a1*, a2*) ordering: printed[j] = internal[perm[j]].
    static std::array<int, 4> system_permutation() { return {a1, a2, a1s, a2s}; }
};

struct TotalState {
    Layout layout;
    Eigen::VectorXcd amplitudes;

    TotalState() = default;
    explicit TotalState(Layout l) : layout(l), amplitudes(Eigen::VectorXcd::Zero(l.dim())) {}

    /// Default initial condition: a1 = a1* = 1, everything else zero.
    static TotalState initial_a1(Layout l, double amplitude = 1.0);
};

/// max_i |state[conj_partner(i)] - conj(state[i])|
double conjugacy_deviation(const Layout& layout, const Eigen::VectorXcd& amplitudes);

/// Positions and momenta (x1, x2, y^(1)_k, y^(2)_k) with momenta in the same
/// order. The map to amplitudes uses the mode frequency, x = (a + a*)/sqrt(2w),
/// p = -i sqrt(w/2)(a - a*), and is only defined for positive frequencies.
struct CoordinateState {
    Eigen::VectorXd x;  // size 2 + N1 + N2
    Eigen::VectorXd p;
};

CoordinateState to_coordinates(const TotalState& s, double omega0,
                               const std::vector<double>& omega1,
                               const std::vector<double>& omega2);

TotalState from_coordinates(const CoordinateState& cs, Layout layout, double omega0,
                            const std::vector<double>& omega1,
                            const std::vector<double>& omega2);

}  // namespace uscrelax
