#pragma once

#include <span>
#include <string>

#include "klab/geometry.hpp"
#include "klab/radial_profile.hpp"

namespace klab {

/// Potential split V = V1 + V2: V1 short-range (measured through r|V1|),
/// V2 long-range differentiable (measured through r|dV2/dr|). The split is
/// declared by the caller, never inferred.
struct PotentialSpec {
    RadialProfile V1;
    RadialProfile V2;

    double value(double r) const { return V1.value(r) + V2.value(r); }
};

struct PotentialAsymptotics {
    double a1 = 0.0;     // sup over tail of |r V1|
    double a2 = 0.0;     // sup over tail of |r dV2/dr|
    double v2_sup = 0.0; // sup over tail of |V2|, should tend to 0
    double tail_start = 0.0;
    bool v2_warning = false; // v2_sup > 0.1
};

PotentialSpec zero_potential(double r_min, double r_max);

/// Families: power(c,p) -> V1 = c/r^p; oscillatory(c,w) -> V1 = c sin(w r)/r;
/// longrange(c,p) -> V2 = c/r^p. All with closed-form derivatives.
/// Throws UnknownFamilyError for anything else.
PotentialSpec builtin_family(const std::string& name, std::span<const double> params,
                             double r_min, double r_max);

/// Inverts the eigen-equation around a chosen exact solution u:
/// V(r) = lambda + (u'' + Delta r * u') / u, stored as V1 with V2 = 0.
/// By construction u solves -Delta u + V u = lambda u with this V.
/// Throws ZeroCrossingError if |u| < 1e-12 * max|u| anywhere on the domain.
PotentialSpec manufactured_potential(const WarpedMetric& M, const RadialProfile& u, double lambda);

PotentialAsymptotics extract_potential_asymptotics(const PotentialSpec& P, double tail_start,
                                                   double points_per_decade = 64.0);

} // namespace klab
