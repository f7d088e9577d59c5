#include "klab/radial_profile.hpp"

#include <algorithm>
#include <cmath>

#include "klab/grid.hpp"

namespace klab {

namespace {

// Two-point quintic Hermite basis on t in [0,1] and its t-derivatives.
struct QuinticBasis {
    double h[6];   // basis values
    double dh[6];  // d/dt
    double d2h[6]; // d^2/dt^2
    double d3h[6]; // d^3/dt^3
};

QuinticBasis quintic_basis(double t) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    QuinticBasis b;
    b.h[0] = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    b.h[1] = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    b.h[2] = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
    b.h[3] = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    b.h[4] = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    b.h[5] = 0.5 * (t3 - 2.0 * t4 + t5);

    b.dh[0] = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    b.dh[1] = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    b.dh[2] = 0.5 * (2.0 * t - 9.0 * t2 + 12.0 * t3 - 5.0 * t4);
    b.dh[3] = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
    b.dh[4] = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    b.dh[5] = 0.5 * (3.0 * t2 - 8.0 * t3 + 5.0 * t4);

    b.d2h[0] = -60.0 * t + 180.0 * t2 - 120.0 * t3;
    b.d2h[1] = -36.0 * t + 96.0 * t2 - 60.0 * t3;
    b.d2h[2] = 1.0 - 9.0 * t + 18.0 * t2 - 10.0 * t3;
    b.d2h[3] = 60.0 * t - 180.0 * t2 + 120.0 * t3;
    b.d2h[4] = -24.0 * t + 84.0 * t2 - 60.0 * t3;
    b.d2h[5] = 3.0 * t - 12.0 * t2 + 10.0 * t3;

    b.d3h[0] = -60.0 + 360.0 * t - 360.0 * t2;
    b.d3h[1] = -36.0 + 192.0 * t - 180.0 * t2;
    b.d3h[2] = -9.0 + 36.0 * t - 30.0 * t2;
    b.d3h[3] = 60.0 - 360.0 * t + 360.0 * t2;
    b.d3h[4] = -24.0 + 168.0 * t - 180.0 * t2;
    b.d3h[5] = 3.0 - 24.0 * t + 30.0 * t2;
    return b;
}

} // namespace

struct RadialProfile::Impl {
    std::string name;
    double r_min = 0.0;
    double r_max = 0.0;

    // closed form
    EvalFn eval_fn;
    ScalarFn d3_fn;

    // grid form
    std::vector<double> r, v, dv, d2v;

    bool is_grid() const { return !r.empty(); }

    double clamp_domain(double x, const char* who) const {
        const double slack = 1e-12 * std::max({1.0, std::abs(r_min), std::abs(r_max)});
        if (x < r_min - slack || x > r_max + slack)
            throw DomainError(std::string(who) + ": r=" + std::to_string(x) + " outside profile '" + name +
                              "' domain [" + std::to_string(r_min) + ", " + std::to_string(r_max) + "]");
        return std::min(std::max(x, r_min), r_max);
    }

    // Locate the cell and evaluate the quintic piece and derivatives.
    void grid_eval(double x, double out[4]) const {
        auto it = std::upper_bound(r.begin(), r.end(), x);
        std::size_t i = (it == r.begin()) ? 0 : static_cast<std::size_t>(it - r.begin()) - 1;
        if (i >= r.size() - 1) i = r.size() - 2;
        const double h = r[i + 1] - r[i];
        const double t = (x - r[i]) / h;
        const QuinticBasis b = quintic_basis(t);
        const double c[6] = {v[i], h * dv[i], h * h * d2v[i], v[i + 1], h * dv[i + 1], h * h * d2v[i + 1]};
        double p = 0, dp = 0, d2p = 0, d3p = 0;
        for (int k = 0; k < 6; ++k) {
            p += c[k] * b.h[k];
            dp += c[k] * b.dh[k];
            d2p += c[k] * b.d2h[k];
            d3p += c[k] * b.d3h[k];
        }
        out[0] = p;
        out[1] = dp / h;
        out[2] = d2p / (h * h);
        out[3] = d3p / (h * h * h);
    }
};

RadialProfile RadialProfile::closed_form(std::string name, double r_min, double r_max,
                                         EvalFn eval, ScalarFn d3) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw DomainError("RadialProfile: need 0 < r_min < r_max");
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->r_min = r_min;
    impl->r_max = r_max;
    impl->eval_fn = std::move(eval);
    impl->d3_fn = std::move(d3);
    RadialProfile p;
    p.impl_ = std::move(impl);
    return p;
}

RadialProfile RadialProfile::from_grid(std::string name, std::vector<double> r,
                                       std::vector<double> value, std::vector<double> d1,
                                       std::vector<double> d2) {
    if (r.size() < 2 || value.size() != r.size() || d1.size() != r.size() || d2.size() != r.size())
        throw DomainError("RadialProfile::from_grid: need >= 2 nodes and equal-length columns");
    if (!strictly_increasing(r))
        throw DomainError("RadialProfile::from_grid: radii must be strictly increasing");
    if (!(r.front() > 0.0))
        throw DomainError("RadialProfile::from_grid: radii must be positive");
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->r_min = r.front();
    impl->r_max = r.back();
    impl->r = std::move(r);
    impl->v = std::move(value);
    impl->dv = std::move(d1);
    impl->d2v = std::move(d2);
    RadialProfile p;
    p.impl_ = std::move(impl);
    return p;
}

const std::string& RadialProfile::name() const {
    if (!impl_) throw DomainError("RadialProfile: empty");
    return impl_->name;
}

double RadialProfile::r_min() const {
    if (!impl_) throw DomainError("RadialProfile: empty");
    return impl_->r_min;
}

double RadialProfile::r_max() const {
    if (!impl_) throw DomainError("RadialProfile: empty");
    return impl_->r_max;
}

ProfileSample RadialProfile::eval(double r) const {
    if (!impl_) throw DomainError("RadialProfile: empty");
    const double x = impl_->clamp_domain(r, "eval");
    if (impl_->is_grid()) {
        double out[4];
        impl_->grid_eval(x, out);
        return {out[0], out[1], out[2]};
    }
    return impl_->eval_fn(x);
}

bool RadialProfile::has_d3() const {
    if (!impl_) return false;
    return impl_->is_grid() || static_cast<bool>(impl_->d3_fn);
}

double RadialProfile::d3(double r) const {
    if (!impl_) throw DomainError("RadialProfile: empty");
    const double x = impl_->clamp_domain(r, "d3");
    if (impl_->is_grid()) {
        double out[4];
        impl_->grid_eval(x, out);
        return out[3];
    }
    if (!impl_->d3_fn)
        throw DomainError("RadialProfile '" + impl_->name + "': third derivative not available");
    return impl_->d3_fn(x);
}

RadialProfile profile_constant(double c, double r_min, double r_max) {
    return RadialProfile::closed_form(
        "const", r_min, r_max, [c](double) -> ProfileSample { return {c, 0.0, 0.0}; },
        [](double) { return 0.0; });
}

RadialProfile profile_power(double c, double p, double r_min, double r_max) {
    return RadialProfile::closed_form(
        "power", r_min, r_max,
        [c, p](double r) -> ProfileSample {
            const double v = c * std::pow(r, p);
            return {v, p * v / r, p * (p - 1.0) * v / (r * r)};
        },
        [c, p](double r) { return c * p * (p - 1.0) * (p - 2.0) * std::pow(r, p - 3.0); });
}

RadialProfile profile_sinh(double r_min, double r_max) {
    return RadialProfile::closed_form(
        "sinh", r_min, r_max,
        [](double r) -> ProfileSample { return {std::sinh(r), std::cosh(r), std::sinh(r)}; },
        [](double r) { return std::cosh(r); });
}

RadialProfile profile_exp(double a, double r_min, double r_max) {
    return RadialProfile::closed_form(
        "exp", r_min, r_max,
        [a](double r) -> ProfileSample {
            const double v = std::exp(a * r);
            return {v, a * v, a * a * v};
        },
        [a](double r) { return a * a * a * std::exp(a * r); });
}

} // namespace klab
