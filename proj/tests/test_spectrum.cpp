#include <doctest.h>

#include "uscrelax/spectrum.hpp"

using namespace uscrelax;

TEST_CASE("sweep keeps branches continuous") {
    auto base = PairParams::with_default_D(1.0, 0.0);
    std::vector<double> grid(201);
    for (int i = 0; i <= 200; ++i) grid[i] = 2.0 * i / 200;
    auto pts = sweep_spectrum(base, DissipativeParams{0.2, 0.01}, grid);
    REQUIRE(pts.size() == grid.size());
    for (size_t i = 1; i < pts.size(); ++i)
        for (int b = 0; b < 4; ++b)
            CHECK(std::abs(pts[i].eigenvalues[b] - pts[i - 1].eigenvalues[b]) < 0.2);
}

TEST_CASE("lossless sweep stays on the imaginary axis") {
    auto base = PairParams::with_default_D(1.0, 0.0);
    auto pts = sweep_spectrum(base, DissipativeParams{0.0, 0.0}, {0.0, 0.3, 0.9, 1.7});
    for (auto& pt : pts)
        for (auto& l : pt.eigenvalues) CHECK(std::abs(l.real()) < 1e-12);
}

TEST_CASE("single-point grid produces one row") {
    auto base = PairParams::with_default_D(1.0, 0.0);
    auto pts = sweep_spectrum(base, DissipativeParams{0.1, 0.1}, {0.5});
    CHECK(pts.size() == 1);
}

TEST_CASE("unsorted grid rejected") {
    auto base = PairParams::with_default_D(1.0, 0.0);
    CHECK_THROWS_AS(sweep_spectrum(base, DissipativeParams{0.1, 0.1}, {0.5, 0.2}),
                    std::invalid_argument);
}

TEST_CASE("exceptional point found for strongly asymmetric losses") {
    auto base = PairParams::with_default_D(1.0, 0.0);
    auto ep = find_exceptional_point(base, DissipativeParams{0.2, 0.01}, 0.0, 0.4);
    CHECK(ep.found);
    CHECK(ep.Omega_EP > 0.05);
    CHECK(ep.Omega_EP < 0.15);
    CHECK(ep.gap < 1e-4);
}

TEST_CASE("no exceptional point for equal losses") {
    auto base = PairParams::with_default_D(1.0, 0.0);
    auto ep = find_exceptional_point(base, DissipativeParams{0.05, 0.05}, 0.0, 0.4);
    CHECK_FALSE(ep.found);
}

TEST_CASE("no exceptional point in the lossless system") {
    auto base = PairParams::with_default_D(1.0, 0.0);
    auto ep = find_exceptional_point(base, DissipativeParams{0.0, 0.0}, 0.0, 0.4);
    CHECK_FALSE(ep.found);
}
