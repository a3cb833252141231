#include "uscrelax/estimation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uscrelax {

namespace {

// 5-term flat-top window (peak-amplitude-accurate, used only for seeding).
double flattop(double frac) {
    constexpr double a0 = 0.21557895, a1 = 0.41663158, a2 = 0.277263158, a3 = 0.083578947,
                     a4 = 0.006947368;
    const double x = 2.0 * M_PI * frac;
    return a0 - a1 * std::cos(x) + a2 * std::cos(2.0 * x) - a3 * std::cos(3.0 * x) +
           a4 * std::cos(4.0 * x);
}

struct Seed {
    double gamma, nu;
};

// Windowed DFT of y; returns up to n_seeds (gamma, nu) guesses from the
// dominant spectral peaks, parabolic-refined.
std::vector<Seed> spectral_seeds(const Eigen::VectorXd& t, const Eigen::VectorXcd& y,
                                 int n_seeds) {
    const int n = static_cast<int>(y.size());
    const double dt = t(1) - t(0);
    std::vector<Complex> buf(n);
    for (int i = 0; i < n; ++i) buf[i] = y(i) * flattop(double(i) / (n - 1));

    std::vector<Complex> spec(n);
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(spec.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    // Reorder to ascending signed frequency: a mode exp(+i nu t) peaks at
    // signed bin m with nu = 2 pi m / (n dt).
    std::vector<double> mag(n);
    std::vector<double> nu(n);
    for (int i = 0; i < n; ++i) {
        const int m = i - n / 2;
        const int src = (m + n) % n;
        nu[i] = 2.0 * M_PI * m / (n * dt);
        mag[i] = std::abs(spec[src]);
    }

    std::vector<int> peaks;
    for (int i = 1; i + 1 < n; ++i)
        if (mag[i] >= mag[i - 1] && mag[i] > mag[i + 1]) peaks.push_back(i);
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return mag[a] > mag[b]; });

    const double bin = 2.0 * M_PI / (n * dt);
    const int min_sep = 6;
    std::vector<int> picked;
    for (int idx : peaks) {
        bool ok = true;
        for (int p : picked)
            if (std::abs(p - idx) < min_sep) ok = false;
        if (ok) picked.push_back(idx);
        if (static_cast<int>(picked.size()) == n_seeds) break;
    }

    std::vector<Seed> seeds;
    const double gamma0 = 1.5 / (t(n - 1) - t(0));
    for (int idx : picked) {
        double delta = 0.0;
        if (idx > 0 && idx + 1 < n && mag[idx] > 0.0) {
            const double la = std::log(std::max(mag[idx - 1], 1e-300));
            const double lb = std::log(mag[idx]);
            const double lc = std::log(std::max(mag[idx + 1], 1e-300));
            const double den = la - 2.0 * lb + lc;
            if (den < 0.0) delta = 0.5 * (la - lc) / den;
            delta = std::clamp(delta, -0.5, 0.5);
        }
        seeds.push_back({gamma0, nu[idx] + delta * bin});
    }
    // Pad with mirrored frequencies if peak picking came up short.
    size_t base = seeds.size();
    for (size_t i = 0; i < base && seeds.size() < static_cast<size_t>(n_seeds); ++i)
        seeds.push_back({gamma0, -seeds[i].nu});
    while (seeds.size() < static_cast<size_t>(n_seeds) && !seeds.empty())
        seeds.push_back({gamma0, seeds[0].nu + bin * 8.0 * seeds.size()});
    return seeds;
}

Eigen::MatrixXcd design_matrix(const Eigen::VectorXd& t, const std::vector<Seed>& th) {
    Eigen::MatrixXcd Phi(t.size(), th.size());
    for (size_t j = 0; j < th.size(); ++j)
        for (Eigen::Index i = 0; i < t.size(); ++i)
            Phi(i, j) = std::exp(Complex(-th[j].gamma, th[j].nu) * t(i));
    return Phi;
}

}  // namespace

ModeFit fit_damped_modes(const Eigen::VectorXd& t, const Eigen::VectorXcd& y, int n_modes) {
    if (t.size() != y.size() || t.size() < 8)
        throw std::invalid_argument("fit_damped_modes: bad input length");
    if (n_modes < 1 || n_modes > 6)
        throw std::invalid_argument("fit_damped_modes: n_modes must be in [1, 6]");

    std::vector<Seed> theta = spectral_seeds(t, y, n_modes);
    if (theta.empty()) throw std::runtime_error("fit_damped_modes: no spectral peaks found");
    const int K = static_cast<int>(theta.size());
    const double ynorm = y.norm();
    if (ynorm == 0.0) throw std::invalid_argument("fit_damped_modes: zero signal");

    auto solve_linear = [&](const Eigen::MatrixXcd& Phi, Eigen::VectorXcd& A,
                            Eigen::VectorXcd& r) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(Phi);
        A = qr.solve(y);
        r = y - Phi * A;
        return r.squaredNorm();
    };

    Eigen::MatrixXcd Phi = design_matrix(t, theta);
    Eigen::VectorXcd A, r;
    double cost = solve_linear(Phi, A, r);

    double mu = 1e-3;
    for (int iter = 0; iter < 300; ++iter) {
        // Kaufman variable-projection Jacobian: J_k = -P_perp (dPhi/dp_k) A.
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(Phi);
        Eigen::MatrixXcd J(t.size(), 2 * K);
        for (int j = 0; j < K; ++j) {
            Eigen::VectorXcd dg(t.size()), dn(t.size());
            for (Eigen::Index i = 0; i < t.size(); ++i) {
                dg(i) = -t(i) * Phi(i, j) * A(j);                  // d(Phi A)/dgamma_j
                dn(i) = Complex(0.0, 1.0) * t(i) * Phi(i, j) * A(j);  // d(Phi A)/dnu_j
            }
            J.col(2 * j) = -(dg - Phi * qr.solve(dg));
            J.col(2 * j + 1) = -(dn - Phi * qr.solve(dn));
        }
        const Eigen::MatrixXd H = (J.adjoint() * J).real();
        const Eigen::VectorXd g = (J.adjoint() * r).real();
        if (g.cwiseAbs().maxCoeff() < 1e-14 * ynorm * ynorm) break;

        bool accepted = false;
        for (int tries = 0; tries < 25 && !accepted; ++tries) {
            Eigen::MatrixXd Hd = H;
            for (int i = 0; i < 2 * K; ++i) Hd(i, i) += mu * std::max(H(i, i), 1e-30);
            const Eigen::VectorXd step = Hd.ldlt().solve(-g);

            std::vector<Seed> trial = theta;
            for (int j = 0; j < K; ++j) {
                trial[j].gamma = std::max(theta[j].gamma + step(2 * j), -1e-3);
                trial[j].nu = theta[j].nu + step(2 * j + 1);
            }
            Eigen::MatrixXcd Phi_t = design_matrix(t, trial);
            Eigen::VectorXcd A_t, r_t;
            const double cost_t = solve_linear(Phi_t, A_t, r_t);
            if (cost_t < cost) {
                const double improvement = (cost - cost_t) / std::max(cost, 1e-300);
                theta = trial;
                Phi = Phi_t;
                A = A_t;
                r = r_t;
                cost = cost_t;
                mu = std::max(mu * 0.3, 1e-14);
                accepted = true;
                if (improvement < 1e-15) iter = 300;
            } else {
                mu *= 4.0;
            }
        }
        if (!accepted) break;
    }

    ModeFit fit;
    fit.residual = std::sqrt(cost) / ynorm;
    fit.flagged = fit.residual > 0.05;
    for (int j = 0; j < K; ++j) {
        ModeEstimate m;
        m.gamma = theta[j].gamma;
        m.nu = theta[j].nu;
        m.amplitude = A(j);
        if (m.gamma < 0.0 && m.gamma > -1e-9) m.gamma = 0.0;  // numerical noise floor
        fit.modes.push_back(m);
    }
    std::sort(fit.modes.begin(), fit.modes.end(), [](const ModeEstimate& a, const ModeEstimate& b) {
        return std::abs(a.amplitude) > std::abs(b.amplitude);
    });
    return fit;
}

RatePair estimate_modes(const TimeSeries& series, double window_fraction, int n_modes) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw std::invalid_argument("estimate_modes: window_fraction must be in (0, 1]");
    const double t_end = series.times(series.times.size() - 1);
    const double t_cut = window_fraction * t_end;
    Eigen::Index nw = 0;
    while (nw < series.times.size() && series.times(nw) <= t_cut) ++nw;
    if (nw < 256) throw std::invalid_argument("estimate_modes: fewer than 256 samples in window");

    const ModeFit fit = fit_damped_modes(series.times.head(nw), series.a1.head(nw), n_modes);

    // The annihilation-type amplitudes rotate as exp(-i omega t), so the two
    // physical peaks sit on one side of the spectrum (mirrored weakly on the
    // other by the counter-rotating terms). Keep the sign group carrying the
    // larger total weight and report |nu|.
    double wpos = 0.0, wneg = 0.0;
    for (const auto& m : fit.modes) (m.nu >= 0.0 ? wpos : wneg) += std::abs(m.amplitude);
    std::vector<ModeEstimate> dom;
    for (const auto& m : fit.modes)
        if ((m.nu >= 0.0) == (wpos >= wneg)) dom.push_back(m);
    if (dom.size() < 2)
        throw std::runtime_error("estimate_modes: fewer than two modes in the dominant band");
    dom.resize(2);  // two dominant (modes are amplitude-sorted)

    RatePair rp;
    const ModeEstimate& hi = std::abs(dom[0].nu) >= std::abs(dom[1].nu) ? dom[0] : dom[1];
    const ModeEstimate& lo = std::abs(dom[0].nu) >= std::abs(dom[1].nu) ? dom[1] : dom[0];
    if (hi.gamma < 0.0 || lo.gamma < 0.0)
        throw std::runtime_error("estimate_modes: negative fitted rate " +
                                 std::to_string(std::min(hi.gamma, lo.gamma)));
    rp.omega_s = std::abs(hi.nu);
    rp.gamma_s = hi.gamma;
    rp.omega_a = std::abs(lo.nu);
    rp.gamma_a = lo.gamma;
    rp.residual = fit.residual;
    rp.flagged = fit.flagged;
    return rp;
}

ExpLawFit fit_exponential_law(const std::vector<std::pair<double, double>>& rows) {
    if (rows.size() < 4) throw std::invalid_argument("fit_exponential_law: need >= 4 rows");
    for (size_t i = 0; i < rows.size(); ++i)
        if (!(rows[i].second > 0.0))
            throw std::invalid_argument("fit_exponential_law: nonpositive gamma at row " +
                                        std::to_string(i));

    const size_t n = rows.size();
    double mx = 0.0, my = 0.0;
    for (const auto& [Om, gam] : rows) {
        mx += Om;
        my += std::log(gam);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [Om, gam] : rows) {
        const double dx = Om - mx, dy = std::log(gam) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    ExpLawFit f;
    f.decay_const = -slope;
    f.gamma0 = std::exp(my - slope * mx);
    f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

}  // namespace uscrelax
