#include <doctest.h>

#include <cmath>

#include "klab/grid.hpp"
#include "klab/radial_profile.hpp"

using namespace klab;

TEST_CASE("closed-form derivatives agree with centered differences") {
    const RadialProfile p = profile_sinh(0.5, 20.0);
    for (double r : {1.0, 2.5, 7.0, 15.0}) {
        const double h = 1e-5 * r;
        const double fd1 = (p.value(r + h) - p.value(r - h)) / (2 * h);
        CHECK(std::abs(fd1 - p.d1(r)) <= 1e-6 * std::abs(p.d1(r)));
        const double fd2 = (p.value(r + h) - 2 * p.value(r) + p.value(r - h)) / (h * h);
        CHECK(std::abs(fd2 - p.d2(r)) <= 1e-5 * std::abs(p.d2(r)));
    }
}

TEST_CASE("domain queries outside [r_min, r_max] are rejected") {
    const RadialProfile p = profile_power(2.0, 1.5, 1.0, 10.0);
    CHECK_THROWS_AS(p.value(0.5), DomainError);
    CHECK_THROWS_AS(p.value(10.5), DomainError);
    CHECK_NOTHROW(p.value(1.0));
    CHECK_NOTHROW(p.value(10.0));
    // rounding slack only
    CHECK_NOTHROW(p.value(10.0 * (1.0 + 1e-13)));
}

TEST_CASE("grid profile interpolates smooth functions to high accuracy") {
    // store sinh on a fine grid, compare off-node against the closed form
    const auto nodes = log_grid(1.0, 20.0, 512.0);
    std::vector<double> v(nodes.size()), d1(nodes.size()), d2(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        v[i] = std::sinh(nodes[i]);
        d1[i] = std::cosh(nodes[i]);
        d2[i] = std::sinh(nodes[i]);
    }
    const RadialProfile g = RadialProfile::from_grid("sinh", nodes, v, d1, d2);
    for (double r : {1.37, 3.9, 9.111, 17.3}) {
        CHECK(std::abs(g.value(r) - std::sinh(r)) <= 1e-9 * std::sinh(r));
        CHECK(std::abs(g.d1(r) - std::cosh(r)) <= 1e-8 * std::cosh(r));
        CHECK(std::abs(g.d2(r) - std::sinh(r)) <= 1e-6 * std::sinh(r));
    }
    CHECK(g.has_d3());
}

TEST_CASE("grid profile rejects malformed input") {
    CHECK_THROWS_AS(RadialProfile::from_grid("bad", {1.0, 1.0, 2.0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}),
                    DomainError);
    CHECK_THROWS_AS(RadialProfile::from_grid("bad", {1.0, 2.0}, {0.0}, {0.0, 0.0}, {0.0, 0.0}),
                    DomainError);
}
