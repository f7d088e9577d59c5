#include "klab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "klab/grid.hpp"
#include "klab/numerics.hpp"

namespace klab {

MonotonicityReport check_monotone_F(const EnergyCurve& curve, double r_from) {
    if (curve.dF_analytic.size() != curve.grid.size())
        throw DomainError("check_monotone_F: curve has no analytic derivative");
    MonotonicityReport rep;
    rep.r_from = r_from;
    rep.energy_floor = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        const double r = curve.grid[i];
        if (r < r_from) continue;
        rep.energy_floor = std::min(rep.energy_floor, curve.F[i]);
        const double tol = 1e-10 * std::abs(curve.F[i]);
        if (curve.dF_analytic[i] <= -tol)
            rep.violations.emplace_back(r, curve.dF_analytic[i]);
    }
    // smallest radius from which dF stays positive to the end
    double first = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = curve.grid.size(); i-- > 0;) {
        const double tol = 1e-10 * std::abs(curve.F[i]);
        if (curve.dF_analytic[i] <= -tol) break;
        first = curve.grid[i];
    }
    rep.first_positive_radius = first;
    return rep;
}

InitialPositivityReport initial_positivity(const EnergyConfig& cfg, const WarpedMetric& M,
                                           const PotentialSpec& P, const TransformedModes& tv,
                                           double R0) {
    (void)P;
    // snap R0 to the nearest grid node
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < tv.grid.size(); ++i)
        if (std::abs(tv.grid[i] - R0) < std::abs(tv.grid[i0] - R0)) i0 = i;
    const double r = tv.grid[i0];

    // m = 0 sphere integrals at R0, and the unique-continuation stand-in
    const TransformedModes tv0 = (tv.m == 0.0) ? tv : transform_v(tv.base, tv.rho, 0.0, tv.lambda);
    const double omega = unit_sphere_volume(M.n);
    const double f = M.f.value(r);
    const double cfac = omega * std::pow(f, M.n - 1) * std::exp(-2.0 * tv0.rho.value(r));
    double P0 = 0, K0 = 0, T0 = 0, X0 = 0;
    for (const auto& md : tv0.modes) {
        P0 += cfac * md.v[i0] * md.v[i0];
        K0 += cfac * md.dv[i0] * md.dv[i0];
        T0 += cfac * md.nu / (f * f) * md.v[i0] * md.v[i0];
        X0 += cfac * md.v[i0] * md.dv[i0];
    }
    double p_max = 0.0;
    for (std::size_t i = 0; i < tv0.grid.size(); ++i) {
        double p = 0;
        for (const auto& md : tv0.modes) p += md.v[i] * md.v[i];
        const double ri = tv0.grid[i];
        const double ci = omega * std::pow(M.f.value(ri), M.n - 1) *
                          std::exp(-2.0 * tv0.rho.value(ri));
        p_max = std::max(p_max, ci * p);
    }
    if (!(P0 > 1e-12 * p_max))
        throw SphereNormVanishesError("sphere integral of v^2 at R0=" + std::to_string(r) +
                                      " is numerically zero");

    // q2 and Delta r at R0, shared by every m0 probe
    const RadialProfile drp = mean_curvature(M);
    const double dr = drp.value(r);
    const double rho1 = 0.5 * cfg.a4 + 0.5 * cfg.a5 / r;
    const double dbar = r * (dr - cfg.a4 - cfg.a5 / r);
    const double sig = cfg.sigma_eff();
    const double q2 = -0.25 * cfg.a4 * cfg.a4 - 0.5 * cfg.a4 * cfg.a5 / r -
                      P.V2.value(r) - (1.0 - sig) * 0.5 * cfg.a4 * dbar / r;
    const double q1 = cfg.has_q1() ? dr - 2.0 * rho1 : 0.0;

    // F(m0, R0, t, 0) / R0^{2 m0} is polynomial in m0: no overflow
    auto scaled_F = [&](double m0) {
        const double Km = K0 + 2.0 * (m0 / r) * X0 + (m0 * m0 / (r * r)) * P0;
        const double Xm = X0 + (m0 / r) * P0;
        const double beta = m0 * (m0 + 1.0) / (r * r) - cfg.t / r + q2 + cfg.lambda;
        return Km - 0.5 * (Km + T0) + 0.5 * q1 * Xm + 0.5 * beta * P0;
    };

    for (double m0 = 1.0; m0 <= 1048576.0; m0 *= 2.0) {
        const double val = scaled_F(m0);
        if (val > 0.0)
            return {m0, val, 2.0 * m0 * std::log(r), r};
    }
    throw WitnessNotFoundError("no m0 <= 2^20 makes F(m0, R0, t, 0) positive at R0=" +
                               std::to_string(r));
}

GrowthReport check_growth(const SphereNorms& norms, double mu, double tail_start, double margin) {
    const double r_max = norms.grid.back();
    if (!(r_max >= 10.0 * tail_start))
        throw TailTooShortError("growth tail must span a decade: r_max=" + std::to_string(r_max) +
                                " < 10 * " + std::to_string(tail_start));

    std::vector<double> lx, ly;
    GrowthReport rep;
    rep.mu = mu;
    rep.tail_start = tail_start;
    rep.min_weighted_tail = std::numeric_limits<double>::infinity();
    bool first = true;
    for (std::size_t i = 0; i < norms.grid.size(); ++i) {
        const double r = norms.grid[i];
        if (r < tail_start) continue;
        const double sum = norms.M2[i] + norms.N2[i];
        if (!(sum > 0.0))
            throw DomainError("check_growth: M^2+N^2 not positive at r=" + std::to_string(r));
        lx.push_back(std::log(r));
        ly.push_back(std::log(sum));
        const double weighted = std::pow(r, mu) * sum;
        rep.min_weighted_tail = std::min(rep.min_weighted_tail, weighted);
        if (first) {
            rep.weighted_at_tail_start = weighted;
            first = false;
        }
    }
    const LineFit fit = fit_line(lx, ly);
    rep.slope = fit.slope;
    rep.slope_stderr = fit.slope_stderr;
    rep.margin = fit.slope - (-mu + margin);
    rep.pass = rep.margin >= 0.0;
    return rep;
}

} // namespace klab
