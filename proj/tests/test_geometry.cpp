#include <doctest.h>

#include <cmath>

#include "klab/geometry.hpp"
#include "klab/grid.hpp"

using namespace klab;

namespace {

RadialProfile exp_power_profile(double a, double b, double r_min, double r_max) {
    // f = e^{a r} r^b
    return RadialProfile::closed_form(
        "exp*power", r_min, r_max,
        [a, b](double r) -> ProfileSample {
            const double v = std::exp(a * r) * std::pow(r, b);
            const double w = a + b / r;
            return {v, v * w, v * (w * w - b / (r * r))};
        },
        [a, b](double r) {
            const double v = std::exp(a * r) * std::pow(r, b);
            const double w = a + b / r;
            return v * (w * w * w - 3.0 * w * b / (r * r) + 2.0 * b / (r * r * r));
        });
}

} // namespace

TEST_CASE("warp integration: flat curvature gives f = r") {
    const auto grid = log_grid(1.0, 30.0, 64.0);
    const RadialProfile K = profile_constant(0.0, 1.0, 30.0);
    const WarpedMetric M = warp_from_curvature(K, 3, 1.0, 1.0, grid);
    for (double r : {1.5, 5.0, 12.0, 29.5})
        CHECK(std::abs(M.f.value(r) - r) <= 1e-10 * r);
}

TEST_CASE("warp integration: K = -1 gives sinh") {
    const auto grid = log_grid(1.0, 40.0, 64.0);
    const RadialProfile K = profile_constant(-1.0, 1.0, 40.0);
    const WarpedMetric M = warp_from_curvature(K, 3, std::sinh(1.0), std::cosh(1.0), grid);
    for (double r : {2.0, 7.3, 18.0, 39.0})
        CHECK(std::abs(M.f.value(r) - std::sinh(r)) <= 1e-8 * std::sinh(r));
}

TEST_CASE("warp integration: K = +1 hits a conjugate point near pi") {
    const auto grid = log_grid(1.0, 10.0, 64.0);
    const RadialProfile K = profile_constant(1.0, 1.0, 10.0);
    try {
        warp_from_curvature(K, 2, std::sin(1.0), std::cos(1.0), grid);
        FAIL("expected ConjugatePointError");
    } catch (const ConjugatePointError& e) {
        CHECK(std::abs(e.radius - M_PI) <= 0.05);
    }
}

TEST_CASE("mean curvature closed forms") {
    const WarpedMetric eu = euclidean_metric(3, 0.5, 50.0);
    const RadialProfile dr_eu = mean_curvature(eu);
    CHECK(dr_eu.value(4.0) == doctest::Approx(0.5).epsilon(1e-14));

    const WarpedMetric h2 = hyperbolic_metric(2, 0.5, 50.0);
    CHECK(mean_curvature(h2).value(5.0) ==
          doctest::Approx(1.0 / std::tanh(5.0)).epsilon(1e-14));

    const WarpedMetric h3 = hyperbolic_metric(3, 0.5, 50.0);
    const double want = -2.0 / (std::sinh(3.0) * std::sinh(3.0));
    CHECK(mean_curvature(h3).d1(3.0) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("trace identity and log-volume derivative agree") {
    const WarpedMetric M = hyperbolic_metric(3, 1.0, 30.0);
    const RadialProfile dr = mean_curvature(M);
    for (double r : {2.0, 6.0, 14.0}) {
        const ProfileSample fs = M.f.eval(r);
        CHECK(dr.value(r) == 2.0 * fs.d1 / fs.value); // same arithmetic path
        // Delta r = d/dr log f^{n-1}
        const double h = 1e-6 * r;
        const double fd =
            ((3 - 1) * std::log(M.f.value(r + h)) - (3 - 1) * std::log(M.f.value(r - h))) /
            (2 * h);
        CHECK(std::abs(fd - dr.value(r)) <= 1e-6 * std::abs(dr.value(r)));
    }
}

TEST_CASE("radial curvature recovery reproduces the input") {
    const auto grid = log_grid(1.0, 40.0, 64.0);
    const double Aamp = 0.25;
    const RadialProfile K = RadialProfile::closed_form(
        "K", 1.0, 40.0, [Aamp](double r) -> ProfileSample {
            const double x = std::log(r);
            return {-1.0 + 2.0 * Aamp * std::sin(x) / r, 0.0, 0.0};
        });
    const WarpedMetric M = warp_from_curvature(K, 2, std::sinh(1.0), std::cosh(1.0), grid);
    for (double r : {1.7, 4.4, 11.0, 31.0})
        CHECK(std::abs(radial_curvature(M, r) - K.value(r)) <= 1e-6 * std::abs(K.value(r)));
}

TEST_CASE("asymptotics: hyperbolic n=3 on tail [10,40]") {
    const WarpedMetric M = hyperbolic_metric(3, 1.0, 40.0);
    const auto g = extract_asymptotics(M, std::nullopt, std::nullopt, 10.0);
    CHECK(g.a4 == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(g.a5) <= 1e-6);
    CHECK(g.delta <= 1e-6);
    CHECK(g.delta2 == 0.0);
}

TEST_CASE("asymptotics: euclidean n=3 gives a4=0, a5=2, delta ~ 0") {
    const WarpedMetric M = euclidean_metric(3, 1.0, 40.0);
    const auto g = extract_asymptotics(M, std::nullopt, std::nullopt, 10.0);
    CHECK(g.a4 == 0.0);
    CHECK(g.a5 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.delta <= 1e-14);
}

TEST_CASE("asymptotics: hyperbolic n=2 has a3 >= tail_start") {
    const WarpedMetric M = hyperbolic_metric(2, 1.0, 40.0);
    const auto g = extract_asymptotics(M, std::nullopt, std::nullopt, 10.0);
    CHECK(g.a3 >= 10.0); // r coth r >= r
}

TEST_CASE("asymptotics: exponential-power warp factors") {
    const double a = 1.3, b = 0.7;
    for (int n : {2, 4}) {
        const WarpedMetric M = make_metric(n, exp_power_profile(a, b, 1.0, 40.0), 1.0);
        const auto g = extract_asymptotics(M, std::nullopt, std::nullopt, 10.0);
        CHECK(g.a4 == doctest::Approx((n - 1) * a).epsilon(1e-12));
        CHECK(g.a5 == doctest::Approx((n - 1) * b).epsilon(1e-9));
        CHECK(g.delta <= 1e-9);
    }
}

TEST_CASE("asymptotics: power warps give a4=0, a5=(n-1)p") {
    const WarpedMetric M = power_warp_metric(3, 1.5, 1.0, 40.0);
    const auto g = extract_asymptotics(M, std::nullopt, std::nullopt, 10.0);
    CHECK(g.a4 == 0.0);
    CHECK(g.a5 == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(g.delta <= 1e-13);
}

TEST_CASE("comparison check: exact hyperbolic passes with tiny margins") {
    const WarpedMetric M = hyperbolic_metric(3, 1.0, 60.0);
    const auto rep = comparison_check(M, 0.0, 10.0);
    CHECK(rep.pass);
    CHECK(rep.max_hessian_dev <= 1e-3);
    CHECK(rep.max_dmeancurv <= 1e-3);
}

TEST_CASE("comparison check: oscillating pinched curvature passes on the tail") {
    const double A = 0.5;
    const auto grid = log_grid(1.0, 80.0, 64.0);
    const RadialProfile K = RadialProfile::closed_form(
        "K", 1.0, 80.0, [](double r) -> ProfileSample {
            const double x = std::log(r);
            const double s = std::sin(x), c = std::cos(x);
            return {-1.0 + s / r, (c - s) / (r * r), (s - 3.0 * c) / (r * r * r)};
        });
    const WarpedMetric M = warp_from_curvature(K, 2, std::sinh(1.0), std::cosh(1.0), grid);
    const auto rep = comparison_check(M, A, 20.0);
    CHECK(rep.pass);
    CHECK(rep.max_hessian_dev <= A + rep.slack);
    CHECK(rep.max_dmeancurv <= 4.0 * (2 - 1) * A + rep.slack);
}

TEST_CASE("comparison check: curvature outside the pinching band is rejected") {
    const double A = 0.2;
    const auto grid = log_grid(1.0, 40.0, 64.0);
    const RadialProfile K = RadialProfile::closed_form(
        "K", 1.0, 40.0, [A](double r) -> ProfileSample {
            const double v = 3.0 * A / r;
            return {-1.0 - v, v / r, -2.0 * v / (r * r)};
        });
    const WarpedMetric M = warp_from_curvature(K, 2, std::sinh(1.0), std::cosh(1.0), grid);
    CHECK_THROWS_AS(comparison_check(M, A, 10.0), HypothesisViolatedError);
}
