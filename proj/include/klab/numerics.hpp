#pragma once

#include <functional>
#include <span>
#include <vector>

#include "klab/errors.hpp"

namespace klab {

/// Finite-difference weights on arbitrary nodes (Fornberg recursion).
/// Returns w[k][j] = weight of f(x[j]) in the order-k derivative at x0,
/// for k = 0..max_order.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> x, int max_order);

/// First derivative of samples F on an arbitrary increasing grid:
/// 5-point stencils in the interior (4th order, centered where possible),
/// 3-point one-sided at the two endpoints (2nd order).
/// Throws GridTooCoarseError for fewer than 5 points.
std::vector<double> fd_derivative(std::span<const double> grid, std::span<const double> F);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Least-squares straight line through (x, y).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct Minimum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section minimization of a unimodal objective on [a, b] to the
/// given relative x-tolerance.
Minimum golden_section_min(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10);

} // namespace klab
