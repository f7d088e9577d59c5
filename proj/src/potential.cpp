#include "klab/potential.hpp"

#include <cmath>
#include <limits>

#include "klab/grid.hpp"

namespace klab {

PotentialSpec zero_potential(double r_min, double r_max) {
    return {profile_constant(0.0, r_min, r_max), profile_constant(0.0, r_min, r_max)};
}

namespace {

RadialProfile inverse_power_profile(double c, double p, double r_min, double r_max) {
    return RadialProfile::closed_form(
        "c/r^p", r_min, r_max,
        [c, p](double r) -> ProfileSample {
            const double v = c * std::pow(r, -p);
            return {v, -p * v / r, p * (p + 1.0) * v / (r * r)};
        },
        [c, p](double r) { return -c * p * (p + 1.0) * (p + 2.0) * std::pow(r, -p - 3.0); });
}

} // namespace

PotentialSpec builtin_family(const std::string& name, std::span<const double> params,
                             double r_min, double r_max) {
    const RadialProfile zero = profile_constant(0.0, r_min, r_max);
    if (name == "power") {
        if (params.size() != 2)
            throw UnknownFamilyError("potential family power expects params (c, p)");
        return {inverse_power_profile(params[0], params[1], r_min, r_max), zero};
    }
    if (name == "oscillatory") {
        if (params.size() != 2)
            throw UnknownFamilyError("potential family oscillatory expects params (c, w)");
        const double c = params[0], w = params[1];
        auto V1 = RadialProfile::closed_form(
            "c*sin(wr)/r", r_min, r_max,
            [c, w](double r) -> ProfileSample {
                const double s = std::sin(w * r), cs = std::cos(w * r);
                const double v = c * s / r;
                const double d1 = c * (w * cs / r - s / (r * r));
                const double d2 = c * (-w * w * s / r - 2.0 * w * cs / (r * r) + 2.0 * s / (r * r * r));
                return {v, d1, d2};
            },
            [c, w](double r) {
                const double s = std::sin(w * r), cs = std::cos(w * r);
                return c * (-w * w * w * cs / r + 3.0 * w * w * s / (r * r) + 6.0 * w * cs / (r * r * r) -
                            6.0 * s / (r * r * r * r));
            });
        return {std::move(V1), zero};
    }
    if (name == "longrange") {
        if (params.size() != 2)
            throw UnknownFamilyError("potential family longrange expects params (c, p)");
        return {zero, inverse_power_profile(params[0], params[1], r_min, r_max)};
    }
    if (name == "none")
        return {zero, zero};
    throw UnknownFamilyError("unknown potential family '" + name + "'");
}

PotentialSpec manufactured_potential(const WarpedMetric& M, const RadialProfile& u, double lambda) {
    const double r_min = u.r_min();
    const double r_max = std::min(u.r_max(), M.f.r_max());
    if (!(r_max > r_min))
        throw DomainError("manufactured_potential: u and metric domains do not overlap");

    double u_max = 0.0;
    const auto scan = log_grid(r_min, r_max, 512.0);
    for (double r : scan)
        u_max = std::max(u_max, std::abs(u.value(r)));
    for (double r : scan)
        if (std::abs(u.value(r)) < 1e-12 * u_max)
            throw ZeroCrossingError(r, "manufactured_potential: u vanishes near r=" + std::to_string(r));

    const RadialProfile dr = mean_curvature(M);
    const bool third = u.has_d3();
    auto V1 = RadialProfile::closed_form(
        "manufactured", r_min, r_max,
        [u, dr, lambda, third](double r) -> ProfileSample {
            const ProfileSample us = u.eval(r);
            const ProfileSample ds = dr.eval(r);
            const double lap = us.d2 + ds.value * us.d1; // Delta u for radial u
            const double v = lambda + lap / us.value;
            double d1 = std::numeric_limits<double>::quiet_NaN();
            if (third) {
                const double lap_p = u.d3(r) + ds.d1 * us.d1 + ds.value * us.d2;
                d1 = lap_p / us.value - lap * us.d1 / (us.value * us.value);
            }
            return {v, d1, std::numeric_limits<double>::quiet_NaN()};
        });
    return {std::move(V1), profile_constant(0.0, r_min, r_max)};
}

PotentialAsymptotics extract_potential_asymptotics(const PotentialSpec& P, double tail_start,
                                                   double points_per_decade) {
    const double r_max = std::min(P.V1.r_max(), P.V2.r_max());
    if (!(tail_start >= std::max(P.V1.r_min(), P.V2.r_min())) || !(tail_start < r_max))
        throw DomainError("extract_potential_asymptotics: tail outside profile domains");

    PotentialAsymptotics out;
    out.tail_start = tail_start;
    for (double r : log_grid(tail_start, r_max, points_per_decade)) {
        out.a1 = std::max(out.a1, std::abs(r * P.V1.value(r)));
        const ProfileSample v2 = P.V2.eval(r);
        out.a2 = std::max(out.a2, std::abs(r * v2.d1));
        out.v2_sup = std::max(out.v2_sup, std::abs(v2.value));
    }
    out.v2_warning = out.v2_sup > 0.1;
    return out;
}

} // namespace klab
