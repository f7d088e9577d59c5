#include <doctest.h>

#include <cmath>

#include "klab/grid.hpp"
#include "klab/numerics.hpp"

using namespace klab;

TEST_CASE("fd_derivative is exact for quadratics on any grid") {
    const auto grid = log_grid(1.0, 10.0, 16.0);
    std::vector<double> F(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        F[i] = grid[i] * grid[i];
    const auto dF = fd_derivative(grid, F);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(dF[i] - 2.0 * grid[i]) <= 1e-11 * grid[i]);
}

TEST_CASE("fd_derivative resolves e^r on a dense log grid") {
    // fourth-order truncation: (local step)^4/30, so keep r h^4 small
    const auto grid = log_grid(0.1, 1.0, 64.0);
    std::vector<double> F(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        F[i] = std::exp(grid[i]);
    const auto dF = fd_derivative(grid, F);
    for (std::size_t i = 2; i + 2 < grid.size(); ++i)
        CHECK(std::abs(dF[i] - F[i]) <= 1e-8 * F[i]);
}

TEST_CASE("fd_derivative needs five points") {
    std::vector<double> g = {1.0, 2.0, 3.0};
    std::vector<double> F = {1.0, 4.0, 9.0};
    CHECK_THROWS_AS(fd_derivative(g, F), GridTooCoarseError);
}

TEST_CASE("line fit recovers slope and intercept") {
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
        x.push_back(0.1 * i);
        y.push_back(3.0 - 2.0 * x.back());
    }
    const LineFit fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.slope_stderr <= 1e-12);
}

TEST_CASE("golden section finds the minimum of a shifted parabola") {
    auto f = [](double x) { return (x - 2.71828) * (x - 2.71828) + 5.0; };
    const Minimum m = golden_section_min(f, 0.0, 10.0, 1e-12);
    CHECK(std::abs(m.x - 2.71828) <= 1e-6);
    CHECK(m.value == doctest::Approx(5.0).epsilon(1e-12));
}
