#include <doctest.h>

#include "uscrelax/params.hpp"

using namespace uscrelax;

TEST_CASE("default diamagnetic coefficient is Omega^2/omega0") {
    auto p = PairParams::with_default_D(1.0, 0.5);
    CHECK(p.D1 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.D2 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("diamagnetic boundedness floor D >= Omega^2/(2 omega0)") {
    PairParams p(1.0, 0.5, 0.13, 0.13);
    CHECK_NOTHROW(p.validate());  // 0.13 > 0.125
    p.D1 = 0.12;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("invalid base parameters rejected") {
    CHECK_THROWS_AS(PairParams(-1.0, 0.1, 0.0, 0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(PairParams(1.0, -0.1, 0.0, 0.0).validate(), std::invalid_argument);
}

TEST_CASE("reservoir grid spans omega0 + delta_omega (k - N/2)") {
    ReservoirParams r(300, 0.01, DispersionLaw{});
    auto w = reservoir_frequencies(r, 1.0);
    REQUIRE(w.size() == 300);
    CHECK(w.front() == doctest::Approx(-0.49).epsilon(1e-12));
    CHECK(w.back() == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(std::is_sorted(w.begin(), w.end()));
    CHECK(count_nonpositive(w) == 50);  // k = 1..50 give omega_k in [-0.49, 0]
}

TEST_CASE("centered band variant is symmetric about omega0") {
    ReservoirParams r(3, 0.1, DispersionLaw{});
    r.center_band = true;
    auto w = reservoir_frequencies(r, 1.0);
    CHECK(w[0] == doctest::Approx(0.9));
    CHECK(w[1] == doctest::Approx(1.0));
    CHECK(w[2] == doctest::Approx(1.1));
}

TEST_CASE("dispersion law is an even power of |omega/omega0|") {
    DispersionLaw d;
    d.g0 = 0.01;
    d.exponent_s = 1.0;
    CHECK(d.g(2.0, 1.0) == doctest::Approx(0.02));
    CHECK(d.g(-2.0, 1.0) == doctest::Approx(0.02));
    d.exponent_s = 0.0;
    CHECK(d.g(5.0, 1.0) == doctest::Approx(0.01));
}

TEST_CASE("g0 calibration inverts gamma = pi g0^2 / delta_omega") {
    const double g0 = DispersionLaw::calibrate_g0(0.02, 0.01);
    CHECK(g0 == doctest::Approx(std::sqrt(0.0002 / M_PI)).epsilon(1e-15));
    DispersionLaw d;
    d.g0 = g0;
    CHECK(M_PI * d.g(1.0, 1.0) * d.g(1.0, 1.0) / 0.01 == doctest::Approx(0.02).epsilon(1e-12));
}
