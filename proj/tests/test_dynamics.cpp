#include <doctest.h>

#include "uscrelax/dynamics.hpp"

using namespace uscrelax;

TEST_CASE("revival time is 2 pi / delta_omega") {
    ReservoirParams r(10, 0.01, DispersionLaw{});
    CHECK(revival_time(r) == doctest::Approx(2.0 * M_PI / 0.01).epsilon(1e-15));
}

TEST_CASE("simulate_pair conserves energy and conjugacy on a small system") {
    ReservoirParams r1(12, 0.05, DispersionLaw(0.015, 0.0));
    ReservoirParams r2(12, 0.05, DispersionLaw(0.01, 0.0));
    auto p = PairParams::with_default_D(1.0, 0.4);
    auto ts = simulate_pair(p, r1, r2);
    CHECK(ts.t_revival == doctest::Approx(2.0 * M_PI / 0.05));
    CHECK(ts.times(ts.times.size() - 1) == doctest::Approx(ts.t_revival));
    CHECK(ts.conjugacy_dev < 1e-10);
    CHECK(ts.energy_drift < 1e-6);
    CHECK(std::abs(ts.a1(0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(ts.a2(0)) < 1e-14);
}

TEST_CASE("spectral and stepper engines produce the same trajectory") {
    ReservoirParams r1(10, 0.06, DispersionLaw(0.02, 0.0));
    ReservoirParams r2(10, 0.06, DispersionLaw(0.01, 0.0));
    auto p = PairParams::with_default_D(1.0, 0.2);
    auto a = simulate_pair(p, r1, r2, std::nullopt, 32, Engine::Spectral);
    auto b = simulate_pair(p, r1, r2, std::nullopt, 32, Engine::Stepper);
    REQUIRE(a.times.size() == b.times.size());
    CHECK((a.a1 - b.a1).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((a.a2 - b.a2).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("too coarse sampling is rejected") {
    ReservoirParams r(4, 0.05, DispersionLaw(0.01, 0.0));
    auto p = PairParams::with_default_D(1.0, 0.1);
    CHECK_THROWS_AS(simulate_pair(p, r, r, std::nullopt, 8), std::invalid_argument);
}

TEST_CASE("dissipative trajectory decays at gamma for decoupled oscillators") {
    auto p = PairParams::with_default_D(1.0, 0.0);
    Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(101, 0.0, 50.0);
    auto ts = simulate_dissipative(p, DissipativeParams{0.03, 0.07}, grid);
    for (int i = 0; i < grid.size(); ++i)
        CHECK(std::abs(ts.a1(i)) == doctest::Approx(std::exp(-0.03 * grid(i))).epsilon(1e-8));
}

TEST_CASE("envelope traces the peaks of a modulated signal") {
    const int n = 2000;
    Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(n, 0.0, 100.0);
    Eigen::VectorXcd y(n);
    for (int i = 0; i < n; ++i)
        y(i) = std::exp(-0.02 * t(i)) * std::cos(3.0 * t(i));  // envelope exp(-0.02 t)
    auto env = envelope(t, y);
    for (int i = 0; i < n; ++i) {
        // linear interpolation between peaks sits slightly above a convex
        // envelope, hence the asymmetric slack
        CHECK(env(i) < std::exp(-0.02 * t(i)) + 3e-3);
        CHECK(env(i) > 0.9 * std::exp(-0.02 * t(i)) - 1e-3);
    }
}

TEST_CASE("relative_rms restricts to the requested window") {
    Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(11, 0.0, 10.0);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(11);
    Eigen::VectorXd x = ones;
    x(10) = 100.0;  // outside the window
    CHECK(relative_rms(t, x, ones, 5.0) == doctest::Approx(0.0));
    CHECK(relative_rms(t, 2.0 * ones, ones, 5.0) == doctest::Approx(1.0));
}
