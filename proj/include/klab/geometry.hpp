#pragma once

#include <optional>
#include <span>
#include <vector>

#include "klab/ode.hpp"
#include "klab/radial_profile.hpp"

namespace klab {

/// Rotationally symmetric manifold g = dr^2 + f(r)^2 * (round sphere metric)
/// on the exterior region r >= r0. Everything geometric derives from the
/// warp factor: mean curvature of the distance spheres Delta r = (n-1) f'/f,
/// Hessian eigenvalue f'/f, radial curvature K_rad = -f''/f.
struct WarpedMetric {
    int n = 0;        // dimension >= 2
    RadialProfile f;  // warp factor, positive on [r0, r_max]
    double r0 = 0.0;

    double r_max() const { return f.r_max(); }
};

/// Validating constructor: checks n >= 2 and samples f > 0 over the domain.
WarpedMetric make_metric(int n, RadialProfile f, double r0);

WarpedMetric euclidean_metric(int n, double r0, double r_max);       // f = r
WarpedMetric hyperbolic_metric(int n, double r0, double r_max);      // f = sinh r
WarpedMetric power_warp_metric(int n, double p, double r0, double r_max); // f = r^p

/// Solve the Jacobi equation f'' = -K f with f(r0) = f0, f'(r0) = f0_prime
/// over the span of `grid` (strictly increasing, grid.front() = r0). The
/// returned metric stores f on a refinement of `grid` fine enough that
/// interpolated values keep full integration accuracy.
///
/// Throws ConjugatePointError at the first zero of f, DomainError on a bad
/// grid.
WarpedMetric warp_from_curvature(const RadialProfile& K, int n, double f0, double f0_prime,
                                 std::span<const double> grid, const OdeOptions& opt = {});

/// Delta r = (n-1) f'/f as a profile with exact first derivative
/// (n-1)(f''/f - (f'/f)^2). The second derivative needs f''' and is NaN
/// when the warp factor does not provide one.
RadialProfile mean_curvature(const WarpedMetric& M);

/// K_rad(r) = -f''(r)/f(r).
double radial_curvature(const WarpedMetric& M, double r);

/// Tail behavior of the geometry: the constants entering every threshold.
/// deviation function: dbar(r) = r*(Delta r - a4 - a5/r).
struct GeometryAsymptotics {
    double a3 = 0.0;     // min over tail of r f'/f
    double a4 = 0.0;     // limit of Delta r
    double a5 = 0.0;     // limit of r (Delta r - a4)
    double delta = 0.0;  // sup over tail of |dbar|
    double delta1 = 0.0; // sup over tail of |d dbar / dr|
    double delta2 = 0.0; // angular part; identically 0 under rotational symmetry
    double A = 0.0;      // sup over tail of r |f'/f - 1|
    double tail_start = 0.0;
};

/// Measures the asymptotic constants on [tail_start, r_max]. The two limits
/// a4 and a5 come from Richardson-style extrapolation over the last two
/// dyadic windows unless hints pin them; the suprema are grid maxima.
///
/// Throws ExtractionUnstableError when the two window estimates disagree by
/// more than 1e-3, DomainError when r_max < 4 * tail_start (two dyadic
/// windows need a factor 4).
GeometryAsymptotics extract_asymptotics(const WarpedMetric& M,
                                        std::optional<double> a4_hint,
                                        std::optional<double> a5_hint,
                                        double tail_start,
                                        double points_per_decade = 64.0);

/// Numeric check of the comparison estimates for curvature pinched around -1:
/// r |f'/f - 1| <= A + slack and r |d Delta r / dr| <= 4(n-1)A + slack on the
/// tail, slack = 0.1 * max(A, 0.01).
struct ComparisonReport {
    double A = 0.0;
    double slack = 0.0;
    double tail_start = 0.0;
    double max_hessian_dev = 0.0;  // max r |f'/f - 1|
    double hessian_bound = 0.0;    // A + slack
    bool hessian_ok = false;
    double max_dmeancurv = 0.0;    // max r |d Delta r / dr|
    double dmeancurv_bound = 0.0;  // 4(n-1)A + slack
    bool dmeancurv_ok = false;
    bool pass = false;
};

/// Throws HypothesisViolatedError if -1 - 2A/r <= K_rad <= -1 + 2A/r fails at
/// a sampled tail radius, or if f'(tail_start) < 0.
ComparisonReport comparison_check(const WarpedMetric& M, double A, double tail_start,
                                  double points_per_decade = 64.0);

} // namespace klab
