#include "uscrelax/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace uscrelax {

double revival_time(const ReservoirParams& res) {
    if (!(res.delta_omega > 0.0))
        throw std::invalid_argument("revival_time: delta_omega must be positive");
    return 2.0 * M_PI / res.delta_omega;
}

namespace {

// Post-processing shared by both engines: extract a1/a2, energy drift and
// conjugacy deviation column by column.
TimeSeries collect(const TotalGenerator& tg, const PairParams& p, const Eigen::VectorXd& times,
                   const Eigen::MatrixXcd& states, double t_rev) {
    TimeSeries ts;
    ts.times = times;
    ts.t_revival = t_rev;
    const Eigen::Index m = times.size();
    ts.a1.resize(m);
    ts.a2.resize(m);
    ts.energy.resize(m);
    double conj_dev = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::VectorXcd col = states.col(k);
        ts.a1(k) = col(Layout::a1);
        ts.a2(k) = col(Layout::a2);
        ts.energy(k) = classical_energy(tg, p, col);
        conj_dev = std::max(conj_dev, conjugacy_deviation(tg.layout, col));
    }
    ts.conjugacy_dev = conj_dev;
    const double e0 = ts.energy(0);
    const double scale = std::max(std::abs(e0), 1e-300);
    ts.energy_drift = (ts.energy.array() - e0).abs().maxCoeff() / scale;
    return ts;
}

}  // namespace

TimeSeries simulate_pair(const PairParams& p, const ReservoirParams& r1,
                         const ReservoirParams& r2, std::optional<TotalState> initial,
                         int samples_per_period, Engine engine) {
    p.validate();
    r1.validate();
    r2.validate();
    if (samples_per_period < 16)
        throw std::invalid_argument("simulate_pair: need >= 16 samples per period");

    TotalGenerator tg = build_total_generator(p, r1, r2);
    TotalState s0 = initial ? *initial : TotalState::initial_a1(tg.layout);
    if (s0.layout.dim() != tg.layout.dim())
        throw std::invalid_argument("simulate_pair: initial state dimension mismatch");

    // Sample against the fastest mode; revival set by the finer reservoir.
    const double w0 = p.omega0, Om = p.Omega;
    const double omega_s = std::sqrt(w0 * w0 + 2.0 * Om * w0 + 4.0 * Om * Om);
    const double t_rev = 2.0 * M_PI / std::max(r1.delta_omega, r2.delta_omega);
    const double dt0 = (2.0 * M_PI / omega_s) / samples_per_period;
    const Eigen::Index n_samples = static_cast<Eigen::Index>(std::ceil(t_rev / dt0)) + 1;
    Eigen::VectorXd times = Eigen::VectorXd::LinSpaced(n_samples, 0.0, t_rev);

    if (engine == Engine::Stepper) {
        const Eigen::MatrixXcd states = propagate(tg.G(), s0.amplitudes, times);
        return collect(tg, p, times, states, t_rev);
    }

    SpectralDecomposition sd = SpectralDecomposition::from_real_minus_i(tg.W);
    if (sd.condition() > 1e12) {
        if (engine == Engine::Spectral)
            throw std::runtime_error("simulate_pair: ill-conditioned eigenbasis (cond estimate " +
                                     std::to_string(sd.condition()) + ")");
        const Eigen::MatrixXcd states = propagate(tg.G(), s0.amplitudes, times);
        return collect(tg, p, times, states, t_rev);
    }

    // Evolve in column blocks to bound memory at large N.
    const Eigen::Index dim = tg.layout.dim();
    const Eigen::Index block = std::max<Eigen::Index>(1, (1 << 22) / dim);
    const Eigen::VectorXcd c = sd.coefficients(s0.amplitudes);

    TimeSeries ts;
    ts.times = times;
    ts.t_revival = t_rev;
    ts.a1.resize(n_samples);
    ts.a2.resize(n_samples);
    ts.energy.resize(n_samples);
    double conj_dev = 0.0;
    for (Eigen::Index start = 0; start < n_samples; start += block) {
        const Eigen::Index len = std::min(block, n_samples - start);
        Eigen::MatrixXcd E(dim, len);
        for (Eigen::Index k = 0; k < len; ++k)
            for (Eigen::Index j = 0; j < dim; ++j)
                E(j, k) = std::exp(sd.eigenvalues()(j) * times(start + k)) * c(j);
        const Eigen::MatrixXcd states = sd.eigenvectors() * E;
        for (Eigen::Index k = 0; k < len; ++k) {
            const Eigen::VectorXcd col = states.col(k);
            ts.a1(start + k) = col(Layout::a1);
            ts.a2(start + k) = col(Layout::a2);
            ts.energy(start + k) = classical_energy(tg, p, col);
            conj_dev = std::max(conj_dev, conjugacy_deviation(tg.layout, col));
        }
    }
    ts.conjugacy_dev = conj_dev;
    const double e0 = ts.energy(0);
    ts.energy_drift = (ts.energy.array() - e0).abs().maxCoeff() / std::max(std::abs(e0), 1e-300);
    return ts;
}

TimeSeries simulate_dissipative(const PairParams& p, const DissipativeParams& d,
                                const Eigen::VectorXd& t_grid) {
    const Eigen::Matrix4cd M = build_dissipative_generator(p, d);
    Eigen::Vector4cd s0;
    s0 << 1.0, 0.0, 1.0, 0.0;  // printed ordering (a1, a2, a1*, a2*)
    const Eigen::MatrixXcd states = propagate_oracle(M, s0, t_grid);

    TimeSeries ts;
    ts.times = t_grid;
    const Eigen::Index m = t_grid.size();
    ts.a1.resize(m);
    ts.a2.resize(m);
    ts.energy = Eigen::VectorXd::Zero(m);
    double conj_dev = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        ts.a1(k) = states(0, k);
        ts.a2(k) = states(1, k);
        conj_dev = std::max({conj_dev, std::abs(states(2, k) - std::conj(states(0, k))),
                             std::abs(states(3, k) - std::conj(states(1, k)))});
    }
    ts.conjugacy_dev = conj_dev;
    return ts;
}

Eigen::VectorXd envelope(const Eigen::VectorXd& times, const Eigen::VectorXcd& y) {
    const Eigen::Index n = times.size();
    Eigen::VectorXd mag = y.cwiseAbs();
    std::vector<Eigen::Index> peaks;
    if (n > 1 && mag(0) > mag(1)) peaks.push_back(0);  // boundary maximum
    for (Eigen::Index i = 1; i + 1 < n; ++i)
        if (mag(i) >= mag(i - 1) && mag(i) > mag(i + 1)) peaks.push_back(i);
    if (n > 1 && mag(n - 1) > mag(n - 2)) peaks.push_back(n - 1);
    if (peaks.size() < 2) return mag;

    Eigen::VectorXd env(n);
    size_t seg = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i <= peaks.front()) {
            env(i) = mag(peaks.front());
        } else if (i >= peaks.back()) {
            env(i) = mag(peaks.back());
        } else {
            while (peaks[seg + 1] < i) ++seg;
            const Eigen::Index l = peaks[seg], r = peaks[seg + 1];
            const double w = (times(i) - times(l)) / (times(r) - times(l));
            env(i) = (1.0 - w) * mag(l) + w * mag(r);
        }
    }
    return env;
}

double relative_rms(const Eigen::VectorXd& times, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y, double t_max) {
    double num = 0.0, den = 0.0;
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < times.size(); ++i) {
        if (times(i) > t_max) break;
        const double d = x(i) - y(i);
        num += d * d;
        den += y(i) * y(i);
        ++count;
    }
    if (count == 0 || den == 0.0) throw std::invalid_argument("relative_rms: empty window");
    return std::sqrt(num / den);
}

}  // namespace uscrelax
