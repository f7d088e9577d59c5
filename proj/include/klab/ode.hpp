#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "klab/errors.hpp"

namespace klab {

/// State of the second-order radial equations written as first-order systems:
/// y = {value, derivative}.
using OdeState = std::array<double, 2>;

using OdeRhs = std::function<void(const OdeState&, OdeState&, double)>;

/// Called after every accepted step with (r_prev, y_prev, r, y); used for
/// sign guards (conjugate points) that must see inter-node resolution.
using OdeStepWatch = std::function<void(double, const OdeState&, double, const OdeState&)>;

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// Step-control collapse threshold, relative to the start radius.
    double min_step_rel = 1e-12;
};

/// Integrate y' = rhs(y, r) across `grid` (strictly increasing), starting
/// from y0 at grid.front(). Returns the state at every node. Uses an
/// embedded Runge-Kutta-Fehlberg 7(8) pair with adaptive step control;
/// steps are clamped to land exactly on the output nodes.
///
/// Throws StiffnessFailureError if the controller pushes the step below
/// min_step_rel * grid.front().
std::vector<OdeState> integrate_over_grid(const OdeRhs& rhs, OdeState y0,
                                          std::span<const double> grid,
                                          const OdeOptions& opt = {},
                                          const OdeStepWatch& watch = nullptr);

} // namespace klab
