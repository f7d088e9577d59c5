#include "klab/ode.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "klab/grid.hpp"

namespace klab {

namespace odeint = boost::numeric::odeint;

std::vector<OdeState> integrate_over_grid(const OdeRhs& rhs, OdeState y0,
                                          std::span<const double> grid,
                                          const OdeOptions& opt,
                                          const OdeStepWatch& watch) {
    if (grid.size() < 2 || !strictly_increasing(grid))
        throw DomainError("integrate_over_grid: grid must be >= 2 strictly increasing radii");

    using stepper_t = odeint::runge_kutta_fehlberg78<OdeState>;
    auto ctrl = odeint::make_controlled(opt.abs_tol, opt.rel_tol, stepper_t());

    const double min_step = opt.min_step_rel * std::abs(grid.front());

    std::vector<OdeState> out;
    out.reserve(grid.size());
    out.push_back(y0);

    double r = grid.front();
    OdeState y = y0;
    double dt = std::min(grid[1] - grid[0], 0.1 * std::abs(grid.front()) + 1e-6);

    auto system = [&rhs](const OdeState& x, OdeState& dxdr, double t) { rhs(x, dxdr, t); };

    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
        const double target = grid[gi];
        int consecutive_fails = 0;
        while (target - r > 1e-14 * target) {
            double dt_try = dt;
            const bool clipped = r + dt_try > target;
            if (clipped) dt_try = target - r;

            const double r_prev = r;
            const OdeState y_prev = y;
            const auto res = ctrl.try_step(system, y, r, dt_try);
            if (res == odeint::fail) {
                dt = dt_try; // controller shrank it
                if (++consecutive_fails > 200 || dt < min_step)
                    throw StiffnessFailureError("step control collapsed near r=" + std::to_string(r) +
                                                " (dt=" + std::to_string(dt) + ")");
                continue;
            }
            consecutive_fails = 0;
            // keep the pre-clip suggestion so node landings do not throttle progress
            dt = clipped ? std::max(dt, dt_try) : dt_try;
            if (watch) watch(r_prev, y_prev, r, y);
        }
        r = target;
        out.push_back(y);
    }
    return out;
}

} // namespace klab
