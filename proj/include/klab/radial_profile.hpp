#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "klab/errors.hpp"

namespace klab {

/// Value and first two radial derivatives of a profile at one radius.
struct ProfileSample {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// A scalar function of the radius with derivative access: the carrier for
/// warp factors, potentials, mean curvature and the deviation function.
///
/// Two representations share one interface: closed-form (a callable giving
/// value/d1/d2 exactly) and dense grid (value/d1/d2 at log-spaced nodes,
/// quintic Hermite in between). Queries outside [r_min, r_max] throw
/// DomainError; there is no silent extrapolation. Immutable after
/// construction, so copies are cheap and sharing across threads is safe.
class RadialProfile {
public:
    using EvalFn = std::function<ProfileSample(double)>;
    using ScalarFn = std::function<double(double)>;

    RadialProfile() = default;

    static RadialProfile closed_form(std::string name, double r_min, double r_max,
                                     EvalFn eval, ScalarFn d3 = nullptr);

    /// Grid representation. d2 nodes are supplied by the caller (for warp
    /// factors they come from the defining ODE, not from differencing).
    static RadialProfile from_grid(std::string name, std::vector<double> r,
                                   std::vector<double> value, std::vector<double> d1,
                                   std::vector<double> d2);

    bool valid() const { return impl_ != nullptr; }
    const std::string& name() const;
    double r_min() const;
    double r_max() const;

    ProfileSample eval(double r) const;
    double value(double r) const { return eval(r).value; }
    double d1(double r) const { return eval(r).d1; }
    double d2(double r) const { return eval(r).d2; }

    /// Third derivative where the representation supports it (closed forms
    /// that declared one; grid profiles via the local quintic).
    bool has_d3() const;
    double d3(double r) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Closed-form profile families used throughout the tests and scenarios.
RadialProfile profile_constant(double c, double r_min, double r_max);
RadialProfile profile_power(double c, double p, double r_min, double r_max); // c * r^p
RadialProfile profile_sinh(double r_min, double r_max);
RadialProfile profile_exp(double a, double r_min, double r_max); // e^{a r}

} // namespace klab
