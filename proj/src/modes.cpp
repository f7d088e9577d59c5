#include "klab/modes.hpp"

#include <cmath>
#include <future>
#include <numbers>

#include "klab/grid.hpp"
#include "klab/numerics.hpp"

namespace klab {

double unit_sphere_volume(int n) {
    if (n < 2) throw DomainError("unit_sphere_volume: n >= 2");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

ModeSolution integrate_mode(const WarpedMetric& M, const PotentialSpec& P, const SolveConfig& cfg,
                            int l, std::span<const double> out_grid) {
    if (out_grid.size() < 2 || !strictly_increasing(out_grid))
        throw DomainError("integrate_mode: bad output grid");
    if (out_grid.front() < M.r0 - 1e-12 * M.r0)
        throw DomainError("integrate_mode: r_start below metric r0");
    if (l < 0)
        throw DomainError("integrate_mode: l >= 0");

    std::size_t slot = 0;
    while (slot < cfg.modes.size() && cfg.modes[slot] != l) ++slot;
    if (slot == cfg.modes.size() || slot >= cfg.initial.size())
        throw DomainError("integrate_mode: no initial data configured for mode l=" + std::to_string(l));
    const auto init = cfg.initial[slot];
    if (init[0] == 0.0 && init[1] == 0.0)
        throw DomainError("integrate_mode: initial data (0,0) excluded (trivial solution)");

    const double nu = static_cast<double>(l) * (l + M.n - 2);
    const RadialProfile dr = mean_curvature(M);
    const RadialProfile f = M.f;
    const double lambda = cfg.lambda;

    auto rhs = [&](const OdeState& y, OdeState& dy, double r) {
        const double fv = f.value(r);
        const double coef = lambda - P.value(r) - nu / (fv * fv);
        dy[0] = y[1];
        dy[1] = -dr.value(r) * y[1] - coef * y[0];
    };

    OdeOptions opt;
    opt.abs_tol = cfg.abs_tol;
    opt.rel_tol = cfg.rel_tol;
    const auto states = integrate_over_grid(rhs, {init[0], init[1]}, out_grid, opt);

    ModeSolution sol;
    sol.l = l;
    sol.nu = nu;
    sol.grid.assign(out_grid.begin(), out_grid.end());
    sol.u.resize(states.size());
    sol.du.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        sol.u[i] = states[i][0];
        sol.du[i] = states[i][1];
    }
    return sol;
}

std::vector<ModeSolution> integrate_modes(const WarpedMetric& M, const PotentialSpec& P,
                                          const SolveConfig& cfg, std::span<const double> out_grid) {
    if (cfg.modes.size() != cfg.initial.size())
        throw DomainError("integrate_modes: modes/initial length mismatch");
    std::vector<ModeSolution> out(cfg.modes.size());
    if (cfg.modes.size() == 1) {
        out[0] = integrate_mode(M, P, cfg, cfg.modes[0], out_grid);
        return out;
    }
    std::vector<std::future<ModeSolution>> jobs;
    jobs.reserve(cfg.modes.size());
    for (int l : cfg.modes)
        jobs.push_back(std::async(std::launch::async,
                                  [&, l] { return integrate_mode(M, P, cfg, l, out_grid); }));
    for (std::size_t i = 0; i < jobs.size(); ++i)
        out[i] = jobs[i].get();
    return out;
}

namespace {

void require_shared_grid(const std::vector<ModeSolution>& modes) {
    if (modes.empty())
        throw GridMismatchError("no modes supplied");
    for (const auto& m : modes) {
        if (m.grid.size() != modes.front().grid.size())
            throw GridMismatchError("modes do not share one grid");
        for (std::size_t i = 0; i < m.grid.size(); ++i)
            if (m.grid[i] != modes.front().grid[i])
                throw GridMismatchError("modes do not share one grid");
    }
}

} // namespace

SphereNorms sphere_norms(const WarpedMetric& M, const std::vector<ModeSolution>& modes) {
    require_shared_grid(modes);
    const double omega = unit_sphere_volume(M.n);
    const auto& grid = modes.front().grid;

    SphereNorms out;
    out.grid = grid;
    out.M2.assign(grid.size(), 0.0);
    out.N2.assign(grid.size(), 0.0);
    out.per_mode_M2.resize(modes.size());
    out.per_mode_N2.resize(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
        out.per_mode_M2[k].resize(grid.size());
        out.per_mode_N2[k].resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double w = omega * std::pow(M.f.value(grid[i]), M.n - 1);
            const double m2 = w * modes[k].u[i] * modes[k].u[i];
            const double n2 = w * modes[k].du[i] * modes[k].du[i];
            out.per_mode_M2[k][i] = m2;
            out.per_mode_N2[k][i] = n2;
            out.M2[i] += m2;
            out.N2[i] += n2;
        }
    }
    return out;
}

TransformedModes transform_v(const std::vector<ModeSolution>& modes, const RadialProfile& rho,
                             double m, double lambda) {
    require_shared_grid(modes);
    const auto& grid = modes.front().grid;
    if (grid.front() < rho.r_min() - 1e-12 * rho.r_min() || grid.back() > rho.r_max() * (1.0 + 1e-12))
        throw DomainError("transform_v: rho not defined on the mode grid");

    TransformedModes out;
    out.m = m;
    out.rho = rho;
    out.grid = grid;
    out.base = modes;
    out.lambda = lambda;
    out.modes.resize(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
        auto& tm = out.modes[k];
        tm.l = modes[k].l;
        tm.nu = modes[k].nu;
        tm.v.resize(grid.size());
        tm.dv.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = grid[i];
            const ProfileSample rs = rho.eval(r);
            const double w = std::pow(r, m) * std::exp(rs.value);
            tm.v[i] = w * modes[k].u[i];
            tm.dv[i] = w * (modes[k].du[i] + (rs.d1 + m / r) * modes[k].u[i]);
        }
    }
    return out;
}

double residual_check(const WarpedMetric& M, const PotentialSpec& P, const TransformedModes& tv) {
    const RadialProfile dr = mean_curvature(M);
    const double m = tv.m;
    double worst = 0.0;
    for (std::size_t k = 0; k < tv.modes.size(); ++k) {
        const auto& base = tv.base[k];
        const auto& t = tv.modes[k];
        for (std::size_t i = 0; i < tv.grid.size(); ++i) {
            const double r = tv.grid[i];
            const ProfileSample rs = tv.rho.eval(r);
            const ProfileSample fs = M.f.eval(r);
            const double drv = dr.value(r);
            const double V = P.value(r);
            const double nu_over_f2 = t.nu / (fs.value * fs.value);

            // u'' from the mode equation, then v_m'' by the product rule
            const double u = base.u[i], up = base.du[i];
            const double upp = -drv * up - (tv.lambda - V - nu_over_f2) * u;
            const double wfac = std::pow(r, m) * std::exp(rs.value);
            const double a = rs.d1 + m / r;               // w'/w
            const double b = a * a + rs.d2 - m / (r * r); // w''/w
            const double vpp = wfac * (b * u + 2.0 * a * up + upp);

            const double lap = vpp + drv * t.dv[i] - nu_over_f2 * t.v[i];
            const double V0 = rs.d1 * drv + rs.d2 - rs.d1 * rs.d1;
            const double coef =
                m * (m + 1.0) / (r * r) + (m / r) * (2.0 * rs.d1 - drv) - V0 - V + tv.lambda;
            const double t1 = lap;
            const double t2 = -(2.0 * m / r + 2.0 * rs.d1) * t.dv[i];
            const double t3 = coef * t.v[i];
            const double res = t1 + t2 + t3;
            const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
            if (scale > 0.0)
                worst = std::max(worst, std::abs(res) / scale);
        }
    }
    return worst;
}

double mode_equation_residual_fd(const WarpedMetric& M, const PotentialSpec& P, double lambda,
                                 const ModeSolution& mode) {
    const RadialProfile dr = mean_curvature(M);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < mode.grid.size(); ++i) {
        const double r = mode.grid[i];
        // u'' from a three-point stencil on the stored derivative column
        const double nodes[3] = {mode.grid[i - 1], r, mode.grid[i + 1]};
        const auto w = fd_weights(r, nodes, 1);
        const double upp =
            w[1][0] * mode.du[i - 1] + w[1][1] * mode.du[i] + w[1][2] * mode.du[i + 1];
        const double fv = M.f.value(r);
        const double coef = lambda - P.value(r) - mode.nu / (fv * fv);
        const double res = upp + dr.value(r) * mode.du[i] + coef * mode.u[i];
        const double scale = std::abs(upp) + std::abs(dr.value(r) * mode.du[i]) +
                             std::abs(coef * mode.u[i]);
        if (scale > 0.0)
            worst = std::max(worst, std::abs(res) / scale);
    }
    return worst;
}

} // namespace klab
