#include "uscrelax/generators.hpp"

#include <algorithm>
#include <cmath>

namespace uscrelax {

std::vector<double> reservoir_frequencies(const ReservoirParams& res, double omega0) {
    res.validate();
    const double offset = res.center_band ? (res.N + 1) / 2.0 : res.N / 2.0;
    std::vector<double> freqs(res.N);
    for (int k = 1; k <= res.N; ++k)
        freqs[k - 1] = omega0 + res.delta_omega * (k - offset);
    return freqs;
}

int count_nonpositive(const std::vector<double>& freqs) {
    return static_cast<int>(std::count_if(freqs.begin(), freqs.end(),
                                          [](double w) { return w <= 0.0; }));
}

int Layout::conj_partner(int i) const {
    if (i < 4) return i ^ 1;
    if (i < 4 + N1) return i + N1;
    if (i < 4 + 2 * N1) return i - N1;
    if (i < 4 + 2 * N1 + N2) return i + N2;
    return i - N2;
}

TotalState TotalState::initial_a1(Layout l, double amplitude) {
    TotalState s(l);
    s.amplitudes(Layout::a1) = amplitude;
    s.amplitudes(Layout::a1s) = amplitude;
    return s;
}

double conjugacy_deviation(const Layout& layout, const Eigen::VectorXcd& amplitudes) {
    double dev = 0.0;
    for (int i = 0; i < layout.dim(); ++i)
        dev = std::max(dev, std::abs(amplitudes(layout.conj_partner(i)) -
                                     std::conj(amplitudes(i))));
    return dev;
}

namespace {

double coord_x(Complex a, Complex as, double w) { return ((a + as) / std::sqrt(2.0 * w)).real(); }
double coord_p(Complex a, Complex as, double w) {
    return (Complex(0.0, -1.0) * std::sqrt(w / 2.0) * (a - as)).real();
}

void require_positive(const std::vector<double>& ws, const char* what) {
    for (double w : ws)
        if (!(w > 0.0))
            throw std::invalid_argument(std::string("coordinate map requires positive ") + what);
}

}  // namespace

CoordinateState to_coordinates(const TotalState& s, double omega0,
                               const std::vector<double>& omega1,
                               const std::vector<double>& omega2) {
    const Layout& l = s.layout;
    if (static_cast<int>(omega1.size()) != l.N1 || static_cast<int>(omega2.size()) != l.N2)
        throw std::invalid_argument("to_coordinates: frequency list size mismatch");
    require_positive(omega1, "reservoir-1 frequencies");
    require_positive(omega2, "reservoir-2 frequencies");

    CoordinateState cs;
    const int n = 2 + l.N1 + l.N2;
    cs.x.resize(n);
    cs.p.resize(n);
    const auto& a = s.amplitudes;
    cs.x(0) = coord_x(a(Layout::a1), a(Layout::a1s), omega0);
    cs.p(0) = coord_p(a(Layout::a1), a(Layout::a1s), omega0);
    cs.x(1) = coord_x(a(Layout::a2), a(Layout::a2s), omega0);
    cs.p(1) = coord_p(a(Layout::a2), a(Layout::a2s), omega0);
    for (int k = 0; k < l.N1; ++k) {
        cs.x(2 + k) = coord_x(a(l.b(k)), a(l.bs(k)), omega1[k]);
        cs.p(2 + k) = coord_p(a(l.b(k)), a(l.bs(k)), omega1[k]);
    }
    for (int k = 0; k < l.N2; ++k) {
        cs.x(2 + l.N1 + k) = coord_x(a(l.c(k)), a(l.cs(k)), omega2[k]);
        cs.p(2 + l.N1 + k) = coord_p(a(l.c(k)), a(l.cs(k)), omega2[k]);
    }
    return cs;
}

TotalState from_coordinates(const CoordinateState& cs, Layout layout, double omega0,
                            const std::vector<double>& omega1,
                            const std::vector<double>& omega2) {
    if (cs.x.size() != 2 + layout.N1 + layout.N2 || cs.p.size() != cs.x.size())
        throw std::invalid_argument("from_coordinates: dimension mismatch");
    require_positive(omega1, "reservoir-1 frequencies");
    require_positive(omega2, "reservoir-2 frequencies");

    TotalState s(layout);
    auto amp = [](double x, double p, double w) {
        return (w * x + Complex(0.0, 1.0) * p) / std::sqrt(2.0 * w);
    };
    auto& a = s.amplitudes;
    a(Layout::a1) = amp(cs.x(0), cs.p(0), omega0);
    a(Layout::a1s) = std::conj(a(Layout::a1));
    a(Layout::a2) = amp(cs.x(1), cs.p(1), omega0);
    a(Layout::a2s) = std::conj(a(Layout::a2));
    for (int k = 0; k < layout.N1; ++k) {
        a(layout.b(k)) = amp(cs.x(2 + k), cs.p(2 + k), omega1[k]);
        a(layout.bs(k)) = std::conj(a(layout.b(k)));
    }
    for (int k = 0; k < layout.N2; ++k) {
        a(layout.c(k)) = amp(cs.x(2 + layout.N1 + k), cs.p(2 + layout.N1 + k), omega2[k]);
        a(layout.cs(k)) = std::conj(a(layout.c(k)));
    }
    return s;
}

Eigen::Matrix4cd build_closed_generator(const PairParams& p) {
    p.validate();
    const Complex I(0.0, 1.0);
    const double w0 = p.omega0;
    Eigen::Matrix4cd M;
    // printed ordering (a1, a2, a1*, a2*)
    M << -I * (w0 + 2.0 * p.D1), -I * p.Omega, -2.0 * I * p.D1, -I * p.Omega,
         -I * p.Omega, -I * (w0 + 2.0 * p.D2), -I * p.Omega, -2.0 * I * p.D2,
          2.0 * I * p.D1, I * p.Omega, I * (w0 + 2.0 * p.D1), I * p.Omega,
          I * p.Omega, 2.0 * I * p.D2, I * p.Omega, I * (w0 + 2.0 * p.D2);
    return M;
}

Eigen::Matrix4cd build_dissipative_generator(const PairParams& p, const DissipativeParams& d) {
    d.validate();
    Eigen::Matrix4cd M = build_closed_generator(p);
    M(0, 0) -= d.gamma1;
    M(1, 1) -= d.gamma2;
    M(2, 2) -= d.gamma1;
    M(3, 3) -= d.gamma2;
    return M;
}

TotalGenerator build_total_generator(const PairParams& p, const ReservoirParams& r1,
                                     const ReservoirParams& r2) {
    p.validate();
    r1.validate();
    r2.validate();

    TotalGenerator tg;
    tg.layout = Layout{r1.N, r2.N};
    tg.omega1 = reservoir_frequencies(r1, p.omega0);
    tg.omega2 = reservoir_frequencies(r2, p.omega0);
    tg.nonpositive_modes = count_nonpositive(tg.omega1) + count_nonpositive(tg.omega2);

    auto couplings = [&](const ReservoirParams& r, const std::vector<double>& ws,
                         std::vector<double>& g, std::vector<double>& D) {
        g.resize(ws.size());
        D.resize(ws.size());
        for (size_t k = 0; k < ws.size(); ++k) {
            g[k] = r.dispersion.g(ws[k], p.omega0);
            D[k] = (r.diamagnetic_policy == DiamagneticPolicy::Full)
                       ? g[k] * g[k] / (2.0 * p.omega0)
                       : 0.0;
        }
    };
    couplings(r1, tg.omega1, tg.g1, tg.Db);
    couplings(r2, tg.omega2, tg.g2, tg.Dc);

    const Layout& l = tg.layout;
    Eigen::MatrixXd& W = tg.W;
    W = Eigen::MatrixXd::Zero(l.dim(), l.dim());

    // System block. Rows are written for the un-starred variable; the starred
    // row is the negated mirror (conjugate pair structure of the equations of motion).
    W(Layout::a1, Layout::a1) = p.omega0 + 2.0 * p.D1;
    W(Layout::a1, Layout::a1s) = 2.0 * p.D1;
    W(Layout::a1, Layout::a2) = p.Omega;
    W(Layout::a1, Layout::a2s) = p.Omega;
    W(Layout::a2, Layout::a2) = p.omega0 + 2.0 * p.D2;
    W(Layout::a2, Layout::a2s) = 2.0 * p.D2;
    W(Layout::a2, Layout::a1) = p.Omega;
    W(Layout::a2, Layout::a1s) = p.Omega;

    for (int k = 0; k < l.N1; ++k) {
        W(Layout::a1, l.b(k)) = tg.g1[k];
        W(Layout::a1, l.bs(k)) = tg.g1[k];
        W(l.b(k), l.b(k)) = tg.omega1[k] + 2.0 * tg.Db[k];
        W(l.b(k), l.bs(k)) = 2.0 * tg.Db[k];
        W(l.b(k), Layout::a1) = tg.g1[k];
        W(l.b(k), Layout::a1s) = tg.g1[k];
    }
    for (int k = 0; k < l.N2; ++k) {
        W(Layout::a2, l.c(k)) = tg.g2[k];
        W(Layout::a2, l.cs(k)) = tg.g2[k];
        W(l.c(k), l.c(k)) = tg.omega2[k] + 2.0 * tg.Dc[k];
        W(l.c(k), l.cs(k)) = 2.0 * tg.Dc[k];
        W(l.c(k), Layout::a2) = tg.g2[k];
        W(l.c(k), Layout::a2s) = tg.g2[k];
    }

    // Starred rows: W[i*, j] = -W[i, conj(j)].
    for (int i = 0; i < l.dim(); ++i) {
        const int is = l.conj_partner(i);
        if (is < i) continue;  // i is the un-starred index
        for (int j = 0; j < l.dim(); ++j)
            W(is, l.conj_partner(j)) = -W(i, j);
    }
    return tg;
}

CoordinateSystem build_coordinate_generator(const PairParams& p, const ReservoirParams& r1,
                                            const ReservoirParams& r2) {
    TotalGenerator tg = build_total_generator(p, r1, r2);
    require_positive(tg.omega1, "reservoir-1 frequencies");
    require_positive(tg.omega2, "reservoir-2 frequencies");

    CoordinateSystem cs;
    cs.omega1 = tg.omega1;
    cs.omega2 = tg.omega2;
    const int n = 2 + r1.N + r2.N;
    cs.K = Eigen::MatrixXd::Zero(n, n);
    cs.K(0, 0) = p.omega0 * p.omega0 + 4.0 * p.D1 * p.omega0;
    cs.K(1, 1) = p.omega0 * p.omega0 + 4.0 * p.D2 * p.omega0;
    cs.K(0, 1) = cs.K(1, 0) = 2.0 * p.Omega * p.omega0;

    cs.gtilde1.resize(r1.N);
    for (int k = 0; k < r1.N; ++k) {
        cs.gtilde1[k] = 2.0 * std::sqrt(p.omega0 * tg.omega1[k]) * tg.g1[k];
        cs.K(0, 2 + k) = cs.K(2 + k, 0) = cs.gtilde1[k];
        cs.K(2 + k, 2 + k) = tg.omega1[k] * tg.omega1[k] + 4.0 * tg.Db[k] * tg.omega1[k];
    }
    cs.gtilde2.resize(r2.N);
    for (int k = 0; k < r2.N; ++k) {
        cs.gtilde2[k] = 2.0 * std::sqrt(p.omega0 * tg.omega2[k]) * tg.g2[k];
        cs.K(1, 2 + r1.N + k) = cs.K(2 + r1.N + k, 1) = cs.gtilde2[k];
        cs.K(2 + r1.N + k, 2 + r1.N + k) =
            tg.omega2[k] * tg.omega2[k] + 4.0 * tg.Dc[k] * tg.omega2[k];
    }
    return cs;
}

double classical_energy(const TotalState& s, const PairParams& p, const ReservoirParams& r1,
                        const ReservoirParams& r2) {
    const Layout& l = s.layout;
    if (l.N1 != r1.N || l.N2 != r2.N)
        throw std::invalid_argument("classical_energy: state/reservoir dimension mismatch");
    TotalGenerator tg = build_total_generator(p, r1, r2);
    return classical_energy(tg, p, s.amplitudes);
}

double classical_energy(const TotalGenerator& tg, const PairParams& p,
                        const Eigen::VectorXcd& a) {
    const Layout& l = tg.layout;
    if (a.size() != l.dim())
        throw std::invalid_argument("classical_energy: state/generator dimension mismatch");
    const Complex x1 = a(Layout::a1) + a(Layout::a1s);
    const Complex x2 = a(Layout::a2) + a(Layout::a2s);

    Complex E = p.omega0 * (a(Layout::a1) * a(Layout::a1s) + a(Layout::a2) * a(Layout::a2s)) +
                p.Omega * x1 * x2 + p.D1 * x1 * x1 + p.D2 * x2 * x2;
    for (int k = 0; k < l.N1; ++k) {
        const Complex xb = a(l.b(k)) + a(l.bs(k));
        E += tg.omega1[k] * a(l.b(k)) * a(l.bs(k)) + tg.Db[k] * xb * xb + tg.g1[k] * x1 * xb;
    }
    for (int k = 0; k < l.N2; ++k) {
        const Complex xc = a(l.c(k)) + a(l.cs(k));
        E += tg.omega2[k] * a(l.c(k)) * a(l.cs(k)) + tg.Dc[k] * xc * xc + tg.g2[k] * x2 * xc;
    }
    return E.real();
}

}  // namespace uscrelax
