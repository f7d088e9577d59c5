#include "klab/thresholds.hpp"

#include <algorithm>
#include <cmath>

#include "klab/errors.hpp"
#include "klab/numerics.hpp"

namespace klab {

namespace {

void require_nonnegative(std::initializer_list<std::pair<const char*, double>> vals) {
    for (const auto& [name, v] : vals)
        if (!(v >= 0.0))
            throw ConstraintViolatedError(std::string(name) + " >= 0",
                                          std::string(name) + " must be non-negative");
}

void enforce(const std::vector<ConstraintCheck>& checks) {
    for (const auto& c : checks)
        if (!c.ok)
            throw ConstraintViolatedError(c.name, "constraint failed: " + c.name +
                                                      " (margin " + std::to_string(c.margin) + ")");
}

ConstraintCheck check(std::string name, double margin) {
    return {std::move(name), margin, margin > 0.0};
}

void require_corollary_inputs(int n, double A) {
    if (n < 2)
        throw ConstraintViolatedError("n >= 2", "dimension must be >= 2");
    require_nonnegative({{"A", A}});
    if (!((n - 1) * A < 1.0))
        throw ConstraintViolatedError("(n-1) A < 1", "pinching amplitude too large: (n-1)A = " +
                                                         std::to_string((n - 1) * A));
}

} // namespace

std::vector<ConstraintCheck> basic_constraints(double mu, double delta, double a3) {
    return {check("mu > delta", mu - delta), check("2 a3 > mu + delta", 2.0 * a3 - mu - delta),
            check("a3 > 1 + delta", a3 - 1.0 - delta)};
}

ThresholdReport basic_threshold(double a1, double a2, double a4, double mu, double delta,
                                double a3) {
    require_nonnegative({{"a1", a1}, {"a2", a2}, {"a4", a4}, {"delta", delta}});
    ThresholdReport rep;
    rep.theorem = "basic";
    rep.inputs = {{"a1", a1}, {"a2", a2}, {"a4", a4}, {"mu", mu}, {"delta", delta}, {"a3", a3}};
    rep.constraints = basic_constraints(mu, delta, a3);
    enforce(rep.constraints);

    const double bottom = 0.25 * a4 * a4;
    const double b1 = bottom + a2 / (mu - delta) +
                      0.25 * (2.0 * a1 + delta * a4) * (2.0 * a1 + delta * a4) /
                          (mu * mu - delta * delta);
    const double b2 = bottom + a2 / (2.0 * (a3 - delta));
    rep.branches = {{"potential-kinetic branch", b1}, {"hessian branch", b2}};
    rep.lambda_star = std::max(b1, b2);
    return rep;
}

ThresholdReport gradient_threshold(double a1, double a2, double a4, double mu, double delta1,
                                   double delta2, double a3) {
    require_nonnegative({{"a1", a1}, {"a2", a2}, {"a4", a4}, {"delta1", delta1}, {"delta2", delta2}});
    ThresholdReport rep;
    rep.theorem = "gradient";
    rep.inputs = {{"a1", a1},    {"a2", a2},       {"a4", a4},
                  {"mu", mu},    {"delta1", delta1}, {"delta2", delta2},
                  {"a3", a3}};
    rep.constraints = {check("mu > 0", mu), check("2 a3 > mu", 2.0 * a3 - mu),
                       check("a3 > 1", a3 - 1.0)};
    enforce(rep.constraints);

    const double bottom = 0.25 * a4 * a4;
    const double b1 = bottom + (a2 + 0.25 * (2.0 * a1 + delta1) * (2.0 * a1 + delta1) / mu +
                                delta2 * delta2 / (8.0 * a3 - 4.0 * mu) + 0.5 * a4 * delta1) /
                                   mu;

    double s0_star;
    double min_value;
    if (delta2 == 0.0) {
        // objective reduces to (a2 + a4 delta1/2)/s0, infimum attained at the
        // right endpoint
        s0_star = 2.0 * a3;
        min_value = (a2 + 0.5 * a4 * delta1) / (2.0 * a3);
    } else {
        auto objective = [&](double s0) {
            return a2 / s0 + 0.5 * a4 * delta1 / s0 +
                   delta2 * delta2 / ((8.0 * a3 - 4.0 * s0) * s0);
        };
        // diverges at s0 = 2 a3, so stand off by 1e-9 relative
        const Minimum m = golden_section_min(objective, 2.0, 2.0 * a3 * (1.0 - 1e-9), 1e-10);
        s0_star = m.x;
        min_value = m.value;
    }
    const double b2 = bottom + min_value;
    rep.branches = {{"fixed-exponent bound", b1}, {"minimized-s0 bound", b2}};
    rep.lambda_star = std::max(b1, b2);
    rep.minimizer = s0_star;
    return rep;
}

ThresholdReport mixed_threshold(double a1, double a2, double a4, double mu, double delta,
                                double delta1, double a3) {
    require_nonnegative({{"a1", a1}, {"a2", a2}, {"a4", a4}, {"delta", delta}, {"delta1", delta1}});
    ThresholdReport rep;
    rep.theorem = "mixed";
    rep.inputs = {{"a1", a1}, {"a2", a2},       {"a4", a4}, {"mu", mu},
                  {"delta", delta}, {"delta1", delta1}, {"a3", a3}};
    rep.constraints = basic_constraints(mu, delta, a3);
    enforce(rep.constraints);

    const double bottom = 0.25 * a4 * a4;
    const double b1 = bottom + a2 / (mu - delta) + 0.5 * a4 * delta1 / (mu - delta) +
                      a1 * a1 / (mu * mu - delta * delta);
    const double b2 = bottom + (2.0 * a2 + a4 * delta1) / (4.0 * (a3 - delta));
    rep.branches = {{"potential-kinetic branch", b1}, {"hessian branch", b2}};
    rep.lambda_star = std::max(b1, b2);
    return rep;
}

ThresholdReport cor_hessian_bound(int n, double A) {
    require_corollary_inputs(n, A);
    const double k = static_cast<double>(n - 1);
    ThresholdReport rep;
    rep.theorem = "cor-hessian";
    rep.inputs = {{"n", static_cast<double>(n)}, {"A", A}};
    rep.constraints = {check("(n-1) A < 1", 1.0 - k * A)};
    rep.lambda_star = 0.25 * k * k + std::pow(k, 4) * A * A / (4.0 * (1.0 - k * k * A * A));
    return rep;
}

ThresholdReport cor_mixed_curvature_bound(int n, double A) {
    require_corollary_inputs(n, A);
    const double k = static_cast<double>(n - 1);
    ThresholdReport rep;
    rep.theorem = "cor-mixed-curvature";
    rep.inputs = {{"n", static_cast<double>(n)}, {"A", A}};
    rep.constraints = {check("(n-1) A < 1", 1.0 - k * A)};
    rep.lambda_star = 0.25 * k * k + 2.0 * k * k * A / (1.0 - k * A);
    return rep;
}

ThresholdReport goodbound_threshold(int n, double A) {
    require_corollary_inputs(n, A);
    const double k = static_cast<double>(n - 1);
    const double C3 = std::pow(k, 4) * A * A / (4.0 * (1.0 - k * k * A * A));
    const double C4 = 2.0 * k * k * A / (1.0 - k * A);

    double sigma_star = 1.0;
    if (C3 > 0.0)
        sigma_star = std::clamp(C4 / (2.0 * C3), 0.0, 1.0);

    ThresholdReport rep;
    rep.theorem = "goodbound";
    rep.inputs = {{"n", static_cast<double>(n)}, {"A", A}};
    rep.constraints = {check("(n-1) A < 1", 1.0 - k * A)};
    rep.lambda_star =
        0.25 * k * k + sigma_star * sigma_star * C3 + (1.0 - sigma_star) * C4;
    rep.branches = {{"sigma = 1 (hessian)", 0.25 * k * k + C3},
                    {"sigma = 0 (mixed-curvature)", 0.25 * k * k + C4}};
    rep.minimizer = sigma_star;
    return rep;
}

} // namespace klab
