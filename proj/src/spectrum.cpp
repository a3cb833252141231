#include "uscrelax/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "uscrelax/generators.hpp"

namespace uscrelax {

std::array<Complex, 4> eigenvalues4(const Eigen::Matrix4cd& M) {
    if (!M.allFinite()) throw std::invalid_argument("eigenvalues4: non-finite input");
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(M, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalues4: solver failure");
    std::array<Complex, 4> ev;
    for (int i = 0; i < 4; ++i) ev[i] = es.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        if (a.imag() != b.imag()) return a.imag() > b.imag();
        return a.real() < b.real();
    });
    return ev;
}

double min_eigenvalue_gap(const std::array<Complex, 4>& ev) {
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) gap = std::min(gap, std::abs(ev[i] - ev[j]));
    return gap;
}

namespace {

std::array<Complex, 4> eigs_at(const PairParams& base, const DissipativeParams& d, double Omega) {
    PairParams p = PairParams::with_default_D(base.omega0, Omega);
    return eigenvalues4(build_dissipative_generator(p, d));
}

// Minimal-total-displacement matching of 4 eigenvalues against the previous
// sweep point (exhaustive over the 24 permutations).
std::array<Complex, 4> match_branches(const std::array<Complex, 4>& prev,
                                      std::array<Complex, 4> cur) {
    std::array<int, 4> idx = {0, 1, 2, 3};
    std::array<int, 4> best = idx;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (int i = 0; i < 4; ++i) cost += std::abs(cur[idx[i]] - prev[i]);
        if (cost < best_cost) {
            best_cost = cost;
            best = idx;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    std::array<Complex, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = cur[best[i]];
    return out;
}

}  // namespace

std::vector<SpectrumPoint> sweep_spectrum(const PairParams& base, const DissipativeParams& d,
                                          const std::vector<double>& omega_grid) {
    if (!std::is_sorted(omega_grid.begin(), omega_grid.end()))
        throw std::invalid_argument("sweep_spectrum: grid must be ascending");
    d.validate();
    std::vector<SpectrumPoint> out;
    out.reserve(omega_grid.size());
    for (double Om : omega_grid) {
        SpectrumPoint pt;
        pt.Omega = Om;
        pt.eigenvalues = eigs_at(base, d, Om);
        if (!out.empty()) pt.eigenvalues = match_branches(out.back().eigenvalues, pt.eigenvalues);
        out.push_back(pt);
    }
    return out;
}

ExceptionalPoint find_exceptional_point(const PairParams& base, const DissipativeParams& d,
                                        double omega_lo, double omega_hi) {
    if (!(omega_hi > omega_lo))
        throw std::invalid_argument("find_exceptional_point: empty bracket");
    d.validate();
    auto gap_at = [&](double Om) { return min_eigenvalue_gap(eigs_at(base, d, Om)); };

    // Coarse scan, then golden-section refinement around the best sample.
    const int n_scan = 600;
    double best_Om = omega_lo, best_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n_scan; ++i) {
        const double Om = omega_lo + (omega_hi - omega_lo) * i / n_scan;
        const double g = gap_at(Om);
        if (g < best_gap) {
            best_gap = g;
            best_Om = Om;
        }
    }
    const double step = (omega_hi - omega_lo) / n_scan;
    double a = std::max(omega_lo, best_Om - step);
    double b = std::min(omega_hi, best_Om + step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = gap_at(x1), f2 = gap_at(x2);
    while (b - a > 1e-10 * base.omega0) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = gap_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = gap_at(x2);
        }
    }
    ExceptionalPoint ep;
    ep.Omega_EP = 0.5 * (a + b);
    ep.gap = gap_at(ep.Omega_EP);

    // Coalescing eigenvalues alone do not make an exceptional point: at a
    // diabolic degeneracy (e.g. Omega = 0 with gamma1 = gamma2) the
    // eigenvectors stay independent. Require the closest pair's eigenvectors
    // to be collinear as well.
    bool collinear = false;
    if (ep.gap < 1e-4 * base.omega0) {
        const PairParams p = PairParams::with_default_D(base.omega0, ep.Omega_EP);
        Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(build_dissipative_generator(p, d), true);
        int bi = 0, bj = 1;
        double bg = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const double g = std::abs(es.eigenvalues()(i) - es.eigenvalues()(j));
                if (g < bg) {
                    bg = g;
                    bi = i;
                    bj = j;
                }
            }
        const Eigen::Vector4cd v1 = es.eigenvectors().col(bi).normalized();
        const Eigen::Vector4cd v2 = es.eigenvectors().col(bj).normalized();
        collinear = std::abs(v1.dot(v2)) > 0.99;
    }
    ep.found = collinear;
    return ep;
}

}  // namespace uscrelax
