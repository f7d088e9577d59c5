#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace klab {

struct ConstraintCheck {
    std::string name;
    double margin = 0.0; // positive means satisfied (strict inequality)
    bool ok = false;
};

/// One eigenvalue-exclusion bound: eigenvalues with lambda > lambda_star are
/// excluded (strictly). Inputs, per-constraint margins and the individual
/// branch values of any max are retained so reports show which regime binds.
struct ThresholdReport {
    std::string theorem;
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<ConstraintCheck> constraints;
    double lambda_star = 0.0;
    std::vector<std::pair<std::string, double>> branches;
    std::optional<double> minimizer; // s0* or sigma* where one exists

    bool constraints_ok() const {
        for (const auto& c : constraints)
            if (!c.ok) return false;
        return true;
    }
};

/// The three structural constraints mu > delta, 2 a3 > mu + delta,
/// a3 > 1 + delta, with margins. Never throws.
std::vector<ConstraintCheck> basic_constraints(double mu, double delta, double a3);

/// lambda_star = max( a4^2/4 + a2/(mu-delta) + (2a1+delta a4)^2/(4(mu^2-delta^2)),
///                    a4^2/4 + a2/(2(a3-delta)) ).
ThresholdReport basic_threshold(double a1, double a2, double a4, double mu, double delta,
                                double a3);

/// Derivative-information version. Two bounds must both hold:
///   a4^2/4 + (1/mu)[a2 + (2a1+delta1)^2/(4mu) + delta2^2/(8a3-4mu) + a4 delta1/2]
///   a4^2/4 + min over s0 in [2, 2a3] of
///            [a2/s0 + a4 delta1/(2 s0) + delta2^2/((8a3-4s0) s0)].
/// The s0 minimization is closed-form at s0 = 2a3 when delta2 = 0 and a
/// golden-section search on [2, 2a3) otherwise; the minimizer is reported.
ThresholdReport gradient_threshold(double a1, double a2, double a4, double mu, double delta1,
                                   double delta2, double a3);

/// lambda_star = max( a4^2/4 + a2/(mu-delta) + a4 delta1/(2(mu-delta)) + a1^2/(mu^2-delta^2),
///                    a4^2/4 + (2 a2 + a4 delta1)/(4(a3-delta)) ).
ThresholdReport mixed_threshold(double a1, double a2, double a4, double mu, double delta,
                                double delta1, double a3);

/// (n-1)^2/4 + (n-1)^4 A^2 / (4 (1 - (n-1)^2 A^2)), for (n-1)A < 1.
ThresholdReport cor_hessian_bound(int n, double A);

/// (n-1)^2/4 + 2 (n-1)^2 A / (1 - (n-1) A), for (n-1)A < 1.
ThresholdReport cor_mixed_curvature_bound(int n, double A);

/// (n-1)^2/4 + min over sigma in [0,1] of sigma^2 C3 + (1-sigma) C4 with
/// C3, C4 the corrections of the two corollary bounds. Closed-form quadratic
/// minimization; sigma* reported (1 by convention when A = 0).
ThresholdReport goodbound_threshold(int n, double A);

} // namespace klab
