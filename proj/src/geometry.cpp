#include "klab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "klab/grid.hpp"

namespace klab {

WarpedMetric make_metric(int n, RadialProfile f, double r0) {
    if (n < 2)
        throw DomainError("WarpedMetric: dimension must be >= 2");
    if (!f.valid())
        throw DomainError("WarpedMetric: empty warp factor");
    if (r0 < f.r_min() - 1e-12 * f.r_min())
        throw DomainError("WarpedMetric: r0 below warp factor domain");
    for (double r : log_grid(f.r_min(), f.r_max(), 128.0))
        if (!(f.value(r) > 0.0))
            throw DomainError("WarpedMetric: warp factor not positive near r=" + std::to_string(r));
    return WarpedMetric{n, std::move(f), r0};
}

WarpedMetric euclidean_metric(int n, double r0, double r_max) {
    return make_metric(n, profile_power(1.0, 1.0, r0, r_max), r0);
}

WarpedMetric hyperbolic_metric(int n, double r0, double r_max) {
    return make_metric(n, profile_sinh(r0, r_max), r0);
}

WarpedMetric power_warp_metric(int n, double p, double r0, double r_max) {
    return make_metric(n, profile_power(1.0, p, r0, r_max), r0);
}

WarpedMetric warp_from_curvature(const RadialProfile& K, int n, double f0, double f0_prime,
                                 std::span<const double> grid, const OdeOptions& opt) {
    if (grid.size() < 2 || !strictly_increasing(grid))
        throw DomainError("warp_from_curvature: grid must be >= 2 strictly increasing radii");
    if (!(f0 > 0.0))
        throw DomainError("warp_from_curvature: f0 must be positive");

    // Refine the caller grid so quintic interpolation of the stored warp
    // factor stays below the integration tolerance (cell width <= 0.02).
    std::vector<double> nodes;
    nodes.reserve(grid.size() * 4);
    const double max_cell = 0.02;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = grid[i], b = grid[i + 1];
        const int sub = std::max(1, static_cast<int>(std::ceil((b - a) / max_cell)));
        for (int k = 0; k < sub; ++k)
            nodes.push_back(a + (b - a) * (static_cast<double>(k) / sub));
    }
    nodes.push_back(grid.back());

    auto rhs = [&K](const OdeState& y, OdeState& dy, double r) {
        dy[0] = y[1];
        dy[1] = -K.value(r) * y[0];
    };
    auto watch = [](double r_prev, const OdeState& y_prev, double r, const OdeState& y) {
        if (y[0] <= 0.0) {
            const double denom = y[0] - y_prev[0];
            const double rc = (denom != 0.0) ? r_prev + (0.0 - y_prev[0]) * (r - r_prev) / denom : r;
            throw ConjugatePointError(rc, "warp factor vanishes near r=" + std::to_string(rc));
        }
        (void)r_prev;
    };

    const auto states = integrate_over_grid(rhs, {f0, f0_prime}, nodes, opt, watch);

    std::vector<double> v(nodes.size()), dv(nodes.size()), d2v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        v[i] = states[i][0];
        dv[i] = states[i][1];
        d2v[i] = -K.value(nodes[i]) * v[i];
        if (!(v[i] > 0.0))
            throw ConjugatePointError(nodes[i], "warp factor vanishes near r=" + std::to_string(nodes[i]));
    }
    return make_metric(n, RadialProfile::from_grid("warp(curvature)", std::move(nodes), std::move(v),
                                                   std::move(dv), std::move(d2v)),
                       grid.front());
}

RadialProfile mean_curvature(const WarpedMetric& M) {
    const RadialProfile f = M.f;
    const double nm1 = static_cast<double>(M.n - 1);
    const bool third = f.has_d3();
    return RadialProfile::closed_form(
        "delta_r", f.r_min(), f.r_max(),
        [f, nm1, third](double r) -> ProfileSample {
            const ProfileSample s = f.eval(r);
            const double y = s.d1 / s.value;
            const double yp = s.d2 / s.value - y * y;
            double ypp = std::numeric_limits<double>::quiet_NaN();
            if (third) {
                const double f3 = f.d3(r);
                ypp = f3 / s.value - 3.0 * s.d1 * s.d2 / (s.value * s.value) + 2.0 * y * y * y;
            }
            return {nm1 * y, nm1 * yp, nm1 * ypp};
        });
}

double radial_curvature(const WarpedMetric& M, double r) {
    const ProfileSample s = M.f.eval(r);
    return -s.d2 / s.value;
}

namespace {

double midrange(std::span<const double> grid, const RadialProfile& g, double lo, double hi) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (double r : grid) {
        if (r < lo || r > hi) continue;
        const double y = g.value(r);
        mn = std::min(mn, y);
        mx = std::max(mx, y);
    }
    return 0.5 * (mn + mx);
}

} // namespace

GeometryAsymptotics extract_asymptotics(const WarpedMetric& M,
                                        std::optional<double> a4_hint,
                                        std::optional<double> a5_hint,
                                        double tail_start,
                                        double points_per_decade) {
    const double r_max = M.r_max();
    if (!(tail_start >= M.f.r_min()) || !(tail_start < r_max))
        throw DomainError("extract_asymptotics: tail_start outside domain");
    // two dyadic windows are only needed when a limit is actually extrapolated
    if ((!a4_hint || !a5_hint) && r_max < 4.0 * tail_start)
        throw DomainError("extract_asymptotics: need r_max >= 4 * tail_start for two dyadic windows");

    const RadialProfile dr = mean_curvature(M);
    const auto tail = log_grid(tail_start, r_max, points_per_decade);

    GeometryAsymptotics out;
    out.tail_start = tail_start;
    out.delta2 = 0.0;

    const double stability = 1e-3;

    if (a4_hint) {
        out.a4 = *a4_hint;
    } else {
        // Richardson pairs eliminate the a5/r term: 2*Dr(2T) - Dr(T).
        const double e_hi = 2.0 * dr.value(r_max) - dr.value(r_max / 2.0);
        const double e_lo = 2.0 * dr.value(r_max / 2.0) - dr.value(r_max / 4.0);
        if (std::abs(e_hi - e_lo) > stability * std::max({1.0, std::abs(e_hi), std::abs(e_lo)}))
            throw ExtractionUnstableError("a4 extrapolation unstable: window estimates " +
                                          std::to_string(e_lo) + " vs " + std::to_string(e_hi));
        out.a4 = e_hi;
    }

    const double a4 = out.a4;
    const RadialProfile g = RadialProfile::closed_form(
        "r(dr-a4)", dr.r_min(), dr.r_max(),
        [dr, a4](double r) -> ProfileSample {
            const ProfileSample s = dr.eval(r);
            return {r * (s.value - a4), 0.0, 0.0};
        });

    if (a5_hint) {
        out.a5 = *a5_hint;
    } else {
        const double est_hi = midrange(tail, g, r_max / 2.0, r_max);
        const double est_lo = midrange(tail, g, r_max / 4.0, r_max / 2.0);
        if (std::abs(est_hi - est_lo) > stability * std::max({1.0, std::abs(est_hi), std::abs(est_lo)}))
            throw ExtractionUnstableError("a5 extrapolation unstable: window estimates " +
                                          std::to_string(est_lo) + " vs " + std::to_string(est_hi));
        out.a5 = est_hi;
    }

    double delta = 0.0, delta1 = 0.0, a3 = std::numeric_limits<double>::infinity(), A = 0.0;
    for (double r : tail) {
        const ProfileSample s = dr.eval(r);
        const double dbar = r * (s.value - out.a4 - out.a5 / r);
        const double dbar_p = s.value + r * s.d1 - out.a4; // d/dr [r(Dr - a4) - a5]
        delta = std::max(delta, std::abs(dbar));
        delta1 = std::max(delta1, std::abs(dbar_p));
        const ProfileSample fs = M.f.eval(r);
        const double hess = r * fs.d1 / fs.value;
        a3 = std::min(a3, hess);
        A = std::max(A, std::abs(hess - r));
    }
    out.delta = delta;
    out.delta1 = delta1;
    out.a3 = a3;
    out.A = A;
    return out;
}

ComparisonReport comparison_check(const WarpedMetric& M, double A, double tail_start,
                                  double points_per_decade) {
    const double r_max = M.r_max();
    if (!(tail_start >= M.f.r_min()) || !(tail_start < r_max))
        throw DomainError("comparison_check: tail_start outside domain");
    if (M.f.d1(tail_start) < 0.0)
        throw HypothesisViolatedError(tail_start, "f'(tail_start) < 0: convexity hypothesis fails");

    const auto tail = log_grid(tail_start, r_max, points_per_decade);
    const RadialProfile dr = mean_curvature(M);

    // curvature pinching -1 - 2A/r <= K_rad <= -1 + 2A/r, with rounding slack
    const double eps = 1e-9;
    for (double r : tail) {
        const double k = radial_curvature(M, r);
        const double band = 2.0 * A / r;
        if (k < -1.0 - band - eps || k > -1.0 + band + eps)
            throw HypothesisViolatedError(r, "radial curvature leaves [-1-2A/r, -1+2A/r] at r=" +
                                                 std::to_string(r) + " (K=" + std::to_string(k) + ")");
    }

    ComparisonReport rep;
    rep.A = A;
    rep.slack = 0.1 * std::max(A, 0.01);
    rep.tail_start = tail_start;
    for (double r : tail) {
        const ProfileSample fs = M.f.eval(r);
        rep.max_hessian_dev = std::max(rep.max_hessian_dev, r * std::abs(fs.d1 / fs.value - 1.0));
        rep.max_dmeancurv = std::max(rep.max_dmeancurv, r * std::abs(dr.d1(r)));
    }
    rep.hessian_bound = A + rep.slack;
    rep.dmeancurv_bound = 4.0 * (M.n - 1) * A + rep.slack;
    rep.hessian_ok = rep.max_hessian_dev <= rep.hessian_bound;
    rep.dmeancurv_ok = rep.max_dmeancurv <= rep.dmeancurv_bound;
    rep.pass = rep.hessian_ok && rep.dmeancurv_ok;
    return rep;
}

} // namespace klab
