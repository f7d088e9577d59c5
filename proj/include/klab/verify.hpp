#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "klab/energy.hpp"

namespace klab {

/// Scan result for dF/dr > 0 on [r_from, r_end]. A node counts as a
/// violation when dF_analytic <= -1e-10 * |F| there.
struct MonotonicityReport {
    double r_from = 0.0;
    /// Smallest grid radius from which dF stays positive through r_end;
    /// NaN when none exists.
    double first_positive_radius = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<double, double>> violations; // (r, dF) within [r_from, r_end]
    double energy_floor = 0.0;                         // min F on [r_from, r_end]

    bool pass() const { return violations.empty(); }
};

MonotonicityReport check_monotone_F(const EnergyCurve& curve, double r_from);

/// Witness for positivity of the initial energy: the smallest power-of-two
/// m0 with F(m0, R0, t, 0) > 0. The value is returned scaled by R0^{-2 m0}
/// (the sign is unaffected and the unscaled number overflows for large m0);
/// log_scale = 2 m0 ln R0 recovers the true magnitude.
struct InitialPositivityReport {
    double m0 = 0.0;
    double value_scaled = 0.0;
    double log_scale = 0.0;
    double R0 = 0.0;
};

/// Doubles m0 from 1 until the scaled energy turns positive; caps at 2^20.
/// Throws SphereNormVanishesError when the sphere integral of v^2 at R0 is
/// below 1e-12 times its grid maximum (the numeric stand-in for unique
/// continuation), WitnessNotFoundError at the cap.
InitialPositivityReport initial_positivity(const EnergyConfig& cfg, const WarpedMetric& M,
                                           const PotentialSpec& P, const TransformedModes& tv,
                                           double R0);

struct GrowthReport {
    double mu = 0.0;
    double tail_start = 0.0;
    double slope = 0.0; // least-squares slope of log(M^2+N^2) vs log r on the tail
    double slope_stderr = 0.0;
    double margin = 0.0; // slope - (-mu + 0.05)
    bool pass = false;
    double min_weighted_tail = 0.0; // min over tail of r^mu (M^2+N^2)
    double weighted_at_tail_start = 0.0;
};

/// Finite-window stand-in for liminf r^mu [M^2+N^2] = infinity: the tail
/// slope of log(M^2+N^2) must stay above -mu + margin.
/// Throws TailTooShortError when the tail spans less than one decade.
GrowthReport check_growth(const SphereNorms& norms, double mu, double tail_start,
                          double margin = 0.05);

} // namespace klab
