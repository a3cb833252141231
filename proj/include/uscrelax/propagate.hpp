#pragma once

#include <Eigen/Dense>

#include "uscrelax/state.hpp"

namespace uscrelax {

/// Eigendecomposition-based propagator for d(state)/dt = G state:
/// state(t) = V exp(diag(evals) t) V^{-1} state(0).
class SpectralDecomposition {
public:
    /// Decompose a generator of the form G = -i W with W real.
    static SpectralDecomposition from_real_minus_i(const Eigen::MatrixXd& W);

    /// Decompose a general complex generator.
    static SpectralDecomposition from_complex(const Eigen::MatrixXcd& G);

    const Eigen::VectorXcd& eigenvalues() const { return evals_; }
    const Eigen::MatrixXcd& eigenvectors() const { return V_; }

    /// 1-norm condition estimate of the eigenvector basis.
    double condition() const { return cond_; }

    /// Expansion coefficients c = V^{-1} s0.
    Eigen::VectorXcd coefficients(const Eigen::VectorXcd& s0) const;

    /// V * (exp(evals t) .* c)
    Eigen::VectorXcd evolve(const Eigen::VectorXcd& c, double t) const;

    /// States at all grid times, one column per time.
    Eigen::MatrixXcd evolve_grid(const Eigen::VectorXcd& s0, const Eigen::VectorXd& t_grid) const;

private:
    Eigen::VectorXcd evals_;
    Eigen::MatrixXcd V_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
    double cond_ = 0.0;

    void finalize();
};

/// Spectral-decomposition solution of d(state)/dt = G state on t_grid
/// (one column per time). Throws std::runtime_error if the eigenbasis
/// condition estimate exceeds 1e12.
Eigen::MatrixXcd propagate_oracle(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& s0,
                                  const Eigen::VectorXd& t_grid);

/// Adaptive Dormand-Prince (RK45) integration of the same system, sampled at
/// the grid times. Throws std::runtime_error (with the offending time) on
/// step-size failure.
Eigen::MatrixXcd propagate(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& s0,
                           const Eigen::VectorXd& t_grid, double rel_tol = 1e-10,
                           double abs_tol = 1e-12);

}  // namespace uscrelax
