#include "klab/energy.hpp"

#include <cmath>

#include "klab/numerics.hpp"

namespace klab {

const char* to_string(EnergyVersion v) {
    switch (v) {
        case EnergyVersion::Basic: return "basic";
        case EnergyVersion::Gradient: return "gradient";
        case EnergyVersion::Mixed: return "mixed";
        case EnergyVersion::GoodBound: return "goodbound";
    }
    return "?";
}

double EnergyConfig::sigma_eff() const {
    switch (version) {
        case EnergyVersion::Basic: return 1.0;
        case EnergyVersion::Gradient:
        case EnergyVersion::Mixed: return 0.0;
        case EnergyVersion::GoodBound:
            if (!(sigma >= 0.0 && sigma <= 1.0))
                throw VersionParameterMissingError("goodbound version needs sigma in [0,1]");
            return sigma;
    }
    throw VersionParameterMissingError("unknown energy version");
}

RadialProfile rho_weight(double a4, double a5, double anchor, double r_min, double r_max) {
    if (!(anchor > 0.0))
        throw DomainError("rho_weight: anchor must be positive");
    return RadialProfile::closed_form(
        "rho", r_min, r_max,
        [a4, a5, anchor](double r) -> ProfileSample {
            const double v = 0.5 * a4 * (r - anchor) + 0.5 * a5 * std::log(r / anchor);
            return {v, 0.5 * a4 + 0.5 * a5 / r, -0.5 * a5 / (r * r)};
        },
        [a5](double r) { return a5 / (r * r * r); });
}

namespace {

// Everything the F and dF formulas need at one radius.
struct NodeCoeffs {
    double r, rs, rsm1; // r, r^s, r^{s-1}
    double fp_over_f;
    double dr, ddr;     // Delta r and its radial derivative
    double rho1, rho2;  // rho', rho''
    double V0, V1, V2;
    double q1, dq1, q2, dq2;
    double beta;        // m(m+1)/r^2 - t/r + q2 + lambda
};

struct Assembler {
    const EnergyConfig& cfg;
    const WarpedMetric& M;
    const PotentialSpec& pot;
    RadialProfile drp;
    double sig;

    Assembler(const EnergyConfig& cfg, const WarpedMetric& M, const PotentialSpec& pot)
        : cfg(cfg), M(M), pot(pot), drp(mean_curvature(M)), sig(cfg.sigma_eff()) {}

    NodeCoeffs at(double r, double m, double t, double s) const {
        NodeCoeffs c;
        c.r = r;
        c.rs = std::pow(r, s);
        c.rsm1 = c.rs / r;
        const ProfileSample fs = M.f.eval(r);
        c.fp_over_f = fs.d1 / fs.value;
        const ProfileSample ds = drp.eval(r);
        c.dr = ds.value;
        c.ddr = ds.d1;
        c.rho1 = 0.5 * cfg.a4 + 0.5 * cfg.a5 / r;
        c.rho2 = -0.5 * cfg.a5 / (r * r);
        c.V0 = c.rho1 * c.dr + c.rho2 - c.rho1 * c.rho1;
        c.V1 = pot.V1.value(r);
        const ProfileSample v2 = pot.V2.eval(r);
        c.V2 = v2.value;

        const double dbar = r * (c.dr - cfg.a4 - cfg.a5 / r);
        const double ddbar_over_r = c.ddr + cfg.a5 / (r * r); // d/dr of dbar/r
        c.q2 = -0.25 * cfg.a4 * cfg.a4 - 0.5 * cfg.a4 * cfg.a5 / r - c.V2 -
               (1.0 - sig) * 0.5 * cfg.a4 * dbar / r;
        c.dq2 = 0.5 * cfg.a4 * cfg.a5 / (r * r) - v2.d1 - (1.0 - sig) * 0.5 * cfg.a4 * ddbar_over_r;
        if (cfg.has_q1()) {
            c.q1 = c.dr - 2.0 * c.rho1; // = dbar / r
            c.dq1 = ddbar_over_r;
        } else {
            c.q1 = 0.0;
            c.dq1 = 0.0;
        }
        c.beta = m * (m + 1.0) / (r * r) - t / r + c.q2 + cfg.lambda;
        return c;
    }

    double F_at(const NodeCoeffs& c, double P, double K, double T, double X) const {
        return c.rs * (K - 0.5 * (K + T) + 0.5 * c.q1 * X + 0.5 * c.beta * P);
    }

    std::array<double, 7> groups_at(const NodeCoeffs& c, double m, double t, double s, double P,
                                    double K, double T, double X) const {
        const double lam = cfg.lambda;
        std::array<double, 7> g;
        g[0] = c.rs * (c.fp_over_f - 0.5 * s / c.r + c.rho1 - 0.5 * c.dr + 0.5 * c.q1) * T;
        g[1] = (2.0 * m * c.rsm1 + 0.5 * c.rs * (2.0 * c.rho1 - c.dr) + 0.5 * c.q1 * c.rs +
                0.5 * s * c.rsm1) *
               K;
        g[2] = (c.rs * (c.V0 + c.V1 + c.V2 + c.q2 - t / c.r) +
                c.rsm1 * m * (c.dr - 2.0 * c.rho1)) *
               X;
        g[3] = (0.5 * s * c.rsm1 * c.q1 + m * c.rsm1 * c.q1 + 0.5 * c.rs * c.dq1) * X;
        g[4] = (0.5 * (s - 2.0) * m * (m + 1.0) * c.rsm1 / (c.r * c.r) -
                0.5 * (s - 1.0) * t * c.rsm1 / c.r + 0.5 * c.rs * c.dq2 + 0.5 * s * c.rsm1 * c.q2 +
                0.5 * lam * s * c.rsm1) *
               P;
        g[5] = 0.5 * c.rs * (c.dr - 2.0 * c.rho1) * c.beta * P;
        g[6] = -0.5 * c.rs * c.q1 *
               (m * (m + 1.0) / (c.r * c.r) + (m / c.r) * (2.0 * c.rho1 - c.dr) - c.V0 - c.V1 -
                c.V2 + lam) *
               P;
        return g;
    }
};

void check_consistency(const EnergyConfig& cfg, const TransformedModes& tv) {
    if (tv.modes.empty() || tv.grid.empty())
        throw DomainError("energy: empty transformed modes");
    if (tv.m != cfg.m)
        throw DomainError("energy: modes transformed with m=" + std::to_string(tv.m) +
                          " but config has m=" + std::to_string(cfg.m));
    if (tv.lambda != cfg.lambda)
        throw DomainError("energy: modes solved with a different lambda than the config");
    const double rm = tv.grid[tv.grid.size() / 2];
    const ProfileSample rs = tv.rho.eval(rm);
    const double want1 = 0.5 * cfg.a4 + 0.5 * cfg.a5 / rm;
    const double want2 = -0.5 * cfg.a5 / (rm * rm);
    const double tol = 1e-10 * (1.0 + std::abs(want1));
    if (std::abs(rs.d1 - want1) > tol || std::abs(rs.d2 - want2) > tol)
        throw DomainError("energy: rho used for the transform does not match (a4, a5) in config");
}

SphereIntegrals sphere_integrals(const WarpedMetric& M, const TransformedModes& tv) {
    const double omega = unit_sphere_volume(M.n);
    const std::size_t n = tv.grid.size();
    SphereIntegrals si;
    si.P.assign(n, 0.0);
    si.K.assign(n, 0.0);
    si.T.assign(n, 0.0);
    si.X.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = tv.grid[i];
        const double f = M.f.value(r);
        const double c = omega * std::pow(f, M.n - 1) * std::exp(-2.0 * tv.rho.value(r));
        double p = 0, k = 0, t = 0, x = 0;
        for (const auto& md : tv.modes) {
            p += md.v[i] * md.v[i];
            k += md.dv[i] * md.dv[i];
            t += md.nu / (f * f) * md.v[i] * md.v[i];
            x += md.v[i] * md.dv[i];
        }
        si.P[i] = c * p;
        si.K[i] = c * k;
        si.T[i] = c * t;
        si.X[i] = c * x;
    }
    return si;
}

} // namespace

EnergyCurve energy_F(const EnergyConfig& cfg, const WarpedMetric& M, const PotentialSpec& P,
                     const TransformedModes& tv) {
    check_consistency(cfg, tv);
    const Assembler a(cfg, M, P);
    EnergyCurve curve;
    curve.grid = tv.grid;
    curve.si = sphere_integrals(M, tv);
    curve.F.resize(tv.grid.size());
    for (std::size_t i = 0; i < tv.grid.size(); ++i) {
        const NodeCoeffs c = a.at(tv.grid[i], cfg.m, cfg.t, cfg.s);
        curve.F[i] = a.F_at(c, curve.si.P[i], curve.si.K[i], curve.si.T[i], curve.si.X[i]);
    }
    return curve;
}

EnergyCurve energy_curve(const EnergyConfig& cfg, const WarpedMetric& M, const PotentialSpec& P,
                         const TransformedModes& tv) {
    EnergyCurve curve = energy_F(cfg, M, P, tv);
    const Assembler a(cfg, M, P);
    const std::size_t n = tv.grid.size();
    for (auto& g : curve.groups)
        g.resize(n);
    curve.dF_analytic.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const NodeCoeffs c = a.at(tv.grid[i], cfg.m, cfg.t, cfg.s);
        const auto g =
            a.groups_at(c, cfg.m, cfg.t, cfg.s, curve.si.P[i], curve.si.K[i], curve.si.T[i],
                        curve.si.X[i]);
        double sum = 0.0;
        for (int k = 0; k < 7; ++k) {
            curve.groups[k][i] = g[k];
            sum += g[k];
        }
        curve.dF_analytic[i] = sum;
    }
    curve.dF_fd = fd_derivative(curve.grid, curve.F);
    return curve;
}

std::vector<double> energy_dF_fd(const EnergyCurve& curve) {
    return fd_derivative(curve.grid, curve.F);
}

InitialEnergyDecomposition initial_energy_decomposition(const EnergyConfig& cfg, double m0,
                                                        const WarpedMetric& M,
                                                        const PotentialSpec& P,
                                                        const TransformedModes& tv) {
    if (!(m0 >= 0.0))
        throw DomainError("initial_energy_decomposition: m0 >= 0");

    // Both sides of the identity are rebuilt from the untransformed modes.
    const TransformedModes tv0 = transform_v(tv.base, tv.rho, 0.0, tv.lambda);
    const TransformedModes tvm = transform_v(tv.base, tv.rho, m0, tv.lambda);

    EnergyConfig cfg0 = cfg;
    cfg0.m = 0.0;
    cfg0.t = 0.0;
    cfg0.s = 0.0;
    EnergyConfig cfgm = cfg;
    cfgm.m = m0;
    cfgm.s = 0.0;

    const EnergyCurve base = energy_F(cfg0, M, P, tv0);   // F(0, r, 0, 0)
    const EnergyCurve direct = energy_F(cfgm, M, P, tvm); // F(m0, r, t, 0)

    const Assembler a(cfg, M, P);
    InitialEnergyDecomposition out;
    const std::size_t n = tv.grid.size();
    out.grid = tv.grid;
    out.s1.resize(n);
    out.s2.resize(n);
    out.s3.resize(n);
    out.sum.resize(n);
    out.direct = direct.F;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = tv.grid[i];
        const NodeCoeffs c = a.at(r, 0.0, 0.0, 0.0);
        const double r2m = std::pow(r, 2.0 * m0);
        const double P0 = base.si.P[i], X0 = base.si.X[i];
        const double drho = c.dr - 2.0 * c.rho1;
        out.s1[i] = r2m * base.F[i];
        out.s2[i] = m0 * r2m / r * (X0 + 0.5 * drho * P0);
        out.s3[i] = 0.5 * r2m *
                    ((2.0 * m0 * m0 + m0) / (r * r) - cfg.t / r - (m0 / r) * (drho - c.q1)) * P0;
        out.sum[i] = out.s1[i] + out.s2[i] + out.s3[i];
    }
    return out;
}

} // namespace klab
