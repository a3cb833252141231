#include "uscrelax/propagate.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace uscrelax {

void SpectralDecomposition::finalize() {
    lu_.compute(V_);
    // 1-norm condition estimate via the explicit inverse; the bases here are
    // at most ~1.6k dimensional.
    const double vnorm = V_.cwiseAbs().colwise().sum().maxCoeff();
    const Eigen::MatrixXcd Vinv = lu_.solve(Eigen::MatrixXcd::Identity(V_.rows(), V_.cols()));
    const double vinorm = Vinv.cwiseAbs().colwise().sum().maxCoeff();
    cond_ = vnorm * vinorm;
}

SpectralDecomposition SpectralDecomposition::from_real_minus_i(const Eigen::MatrixXd& W) {
    const int n = static_cast<int>(W.rows());
    std::vector<double> A(W.data(), W.data() + n * n);
    std::vector<double> wr(n), wi(n), vr(static_cast<size_t>(n) * n);
    int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n, A.data(), n, wr.data(), wi.data(),
                             nullptr, n, vr.data(), n);
    if (info != 0)
        throw std::runtime_error("dgeev failed, info=" + std::to_string(info));

    SpectralDecomposition sd;
    sd.evals_.resize(n);
    sd.V_.resize(n, n);
    // dgeev packs complex conjugate eigenpairs as (Re, Im) column pairs.
    for (int j = 0; j < n; ++j) {
        if (wi[j] == 0.0) {
            sd.evals_(j) = Complex(0.0, -wr[j]);  // eig(G) = -i eig(W)
            for (int i = 0; i < n; ++i) sd.V_(i, j) = vr[j * n + i];
        } else {
            for (int i = 0; i < n; ++i) {
                const Complex v(vr[j * n + i], vr[(j + 1) * n + i]);
                sd.V_(i, j) = v;
                sd.V_(i, j + 1) = std::conj(v);
            }
            sd.evals_(j) = Complex(0.0, -1.0) * Complex(wr[j], wi[j]);
            sd.evals_(j + 1) = Complex(0.0, -1.0) * Complex(wr[j], -wi[j]);
            ++j;
        }
    }
    sd.finalize();
    return sd;
}

SpectralDecomposition SpectralDecomposition::from_complex(const Eigen::MatrixXcd& G) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(G);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("complex eigendecomposition failed");
    SpectralDecomposition sd;
    sd.evals_ = es.eigenvalues();
    sd.V_ = es.eigenvectors();
    sd.finalize();
    return sd;
}

Eigen::VectorXcd SpectralDecomposition::coefficients(const Eigen::VectorXcd& s0) const {
    return lu_.solve(s0);
}

Eigen::VectorXcd SpectralDecomposition::evolve(const Eigen::VectorXcd& c, double t) const {
    Eigen::VectorXcd phase(evals_.size());
    for (Eigen::Index j = 0; j < evals_.size(); ++j)
        phase(j) = std::exp(evals_(j) * t) * c(j);
    return V_ * phase;
}

Eigen::MatrixXcd SpectralDecomposition::evolve_grid(const Eigen::VectorXcd& s0,
                                                    const Eigen::VectorXd& t_grid) const {
    const Eigen::VectorXcd c = coefficients(s0);
    const Eigen::Index n = evals_.size(), m = t_grid.size();
    Eigen::MatrixXcd E(n, m);
    for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index j = 0; j < n; ++j)
            E(j, k) = std::exp(evals_(j) * t_grid(k)) * c(j);
    return V_ * E;
}

Eigen::MatrixXcd propagate_oracle(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& s0,
                                  const Eigen::VectorXd& t_grid) {
    if (G.rows() != G.cols() || G.rows() != s0.size())
        throw std::invalid_argument("propagate_oracle: dimension mismatch");
    SpectralDecomposition sd;
    if (G.real().cwiseAbs().maxCoeff() == 0.0)
        sd = SpectralDecomposition::from_real_minus_i((Complex(0.0, 1.0) * G).real());
    else
        sd = SpectralDecomposition::from_complex(G);
    if (sd.condition() > 1e12)
        throw std::runtime_error("propagate_oracle: eigenbasis condition estimate " +
                                 std::to_string(sd.condition()) + " exceeds 1e12");
    return sd.evolve_grid(s0, t_grid);
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Eigen::MatrixXcd propagate(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& s0,
                           const Eigen::VectorXd& t_grid, double rel_tol, double abs_tol) {
    if (G.rows() != G.cols() || G.rows() != s0.size())
        throw std::invalid_argument("propagate: dimension mismatch");
    const Eigen::Index n = s0.size(), m = t_grid.size();
    Eigen::MatrixXcd out(n, m);

    Eigen::VectorXcd y = s0;
    double t = t_grid.size() > 0 ? t_grid(0) : 0.0;
    out.col(0) = y;

    auto f = [&](const Eigen::VectorXcd& v) { return (G * v).eval(); };
    Eigen::VectorXcd k1 = f(y);
    double h = 1e-3;

    for (Eigen::Index idx = 1; idx < m; ++idx) {
        const double t_target = t_grid(idx);
        while (t < t_target) {
            h = std::min(h, t_target - t);
            const Eigen::VectorXcd k2 = f(y + h * (a21 * k1));
            const Eigen::VectorXcd k3 = f(y + h * (a31 * k1 + a32 * k2));
            const Eigen::VectorXcd k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const Eigen::VectorXcd k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Eigen::VectorXcd k6 =
                f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Eigen::VectorXcd ynew =
                y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Eigen::VectorXcd k7 = f(ynew);
            const Eigen::VectorXcd err =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double err_norm = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double sc = abs_tol + rel_tol * std::max(std::abs(y(i)), std::abs(ynew(i)));
                err_norm = std::max(err_norm, std::abs(err(i)) / sc);
            }
            if (err_norm <= 1.0) {
                t += h;
                y = ynew;
                k1 = k7;  // FSAL
            }
            const double factor =
                err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw std::runtime_error("propagate: step size underflow at t=" +
                                         std::to_string(t));
        }
        out.col(idx) = y;
    }
    return out;
}

}  // namespace uscrelax
