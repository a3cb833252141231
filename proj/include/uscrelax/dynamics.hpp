#pragma once

#include <Eigen/Dense>
#include <optional>

#include "uscrelax/generators.hpp"
#include "uscrelax/propagate.hpp"

namespace uscrelax {

/// Sampled trajectory of the system amplitudes over a uniform time grid.
struct TimeSeries {
    Eigen::VectorXd times;
    Eigen::VectorXcd a1, a2;
    Eigen::VectorXd energy;
    double conjugacy_dev = 0.0;   // max over the trajectory
    double energy_drift = 0.0;    // max relative deviation from E(0)
    double t_revival = 0.0;       // T_R of the driving reservoir config (0 if n/a)

    double dt() const { return times.size() > 1 ? times(1) - times(0) : 0.0; }
};

/// T_R = 2 pi / delta_omega.
double revival_time(const ReservoirParams& res);

enum class Engine { Auto, Spectral, Stepper };

/// Propagates the total Hermitian system (system + both reservoirs) over
/// [0, T_R], sampling `samples_per_period` points per 2 pi / omega_s period.
/// Default initial state: a1 = a1* = 1, all else 0.
TimeSeries simulate_pair(const PairParams& p, const ReservoirParams& r1,
                         const ReservoirParams& r2,
                         std::optional<TotalState> initial = std::nullopt,
                         int samples_per_period = 32, Engine engine = Engine::Auto);

/// Trajectory of the phenomenological dissipative 4x4 system on the given
/// grid, same initial condition convention.
TimeSeries simulate_dissipative(const PairParams& p, const DissipativeParams& d,
                                const Eigen::VectorXd& t_grid);

/// Upper envelope of |y|(t): local maxima, linearly interpolated back onto
/// the full grid (endpoints extended flat).
Eigen::VectorXd envelope(const Eigen::VectorXd& times, const Eigen::VectorXcd& y);

/// Relative RMS deviation sqrt(mean((x-y)^2)) / sqrt(mean(y^2)) restricted to
/// times <= t_max.
double relative_rms(const Eigen::VectorXd& times, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y, double t_max);

}  // namespace uscrelax
