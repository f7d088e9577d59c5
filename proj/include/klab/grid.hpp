#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "klab/errors.hpp"

namespace klab {

/// Log-spaced radii from r_min to r_max with a fixed density per decade.
/// Both endpoints are included; interior nodes sit at uniform steps of
/// log10(r). This is the default sampling for every profile and curve:
/// all asymptotic quantities in play vary on multiplicative scales.
inline std::vector<double> log_grid(double r_min, double r_max, double points_per_decade = 64.0) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw DomainError("log_grid: need 0 < r_min < r_max");
    if (!(points_per_decade > 0.0))
        throw DomainError("log_grid: points_per_decade must be positive");
    const double lg0 = std::log10(r_min);
    const double lg1 = std::log10(r_max);
    const std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((lg1 - lg0) * points_per_decade)) + 1);
    std::vector<double> r(n);
    const double dlg = (lg1 - lg0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        r[i] = std::pow(10.0, lg0 + dlg * static_cast<double>(i));
    r.front() = r_min;
    r.back() = r_max;
    return r;
}

inline bool strictly_increasing(std::span<const double> x) {
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) return false;
    return true;
}

/// Index of the first grid node with r >= r_from (grid assumed increasing).
inline std::size_t lower_index(std::span<const double> grid, double r_from) {
    std::size_t i = 0;
    while (i < grid.size() && grid[i] < r_from) ++i;
    return i;
}

} // namespace klab
