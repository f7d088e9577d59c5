#include "klab/scenario.hpp"

#include <cmath>

#include "klab/grid.hpp"
#include "klab/report.hpp"

namespace klab {

WarpedMetric build_metric(const ScenarioConfig& cfg) {
    if (cfg.metric_family == "euclidean")
        return euclidean_metric(cfg.n, cfg.r0, cfg.r_max);
    if (cfg.metric_family == "hyperbolic")
        return hyperbolic_metric(cfg.n, cfg.r0, cfg.r_max);
    if (cfg.metric_family == "power")
        return power_warp_metric(cfg.n, cfg.warp_exponent, cfg.r0, cfg.r_max);

    // curvature family: integrate f'' = -K f
    RadialProfile K;
    const double lo = cfg.r0, hi = cfg.r_max;
    if (cfg.curvature_profile == "sinlog") {
        const double A = cfg.A;
        K = RadialProfile::closed_form(
            "K=-1+2A sin(ln r)/r", lo, hi, [A](double r) -> ProfileSample {
                const double x = std::log(r);
                const double s = std::sin(x), c = std::cos(x);
                return {-1.0 + 2.0 * A * s / r, 2.0 * A * (c - s) / (r * r),
                        2.0 * A * (s - 3.0 * c) / (r * r * r)};
            });
    } else if (cfg.curvature_profile == "const") {
        K = profile_constant(cfg.curvature_K0, lo, hi);
    } else if (cfg.curvature_profile == "power") {
        const double A = cfg.A, q = cfg.curvature_exponent;
        K = RadialProfile::closed_form(
            "K=-1+2A/r^q", lo, hi, [A, q](double r) -> ProfileSample {
                const double v = 2.0 * A * std::pow(r, -q);
                return {-1.0 + v, -q * v / r, q * (q + 1.0) * v / (r * r)};
            });
    } else {
        throw DomainError("unknown curvature profile " + cfg.curvature_profile);
    }
    const double f0 = cfg.f0.value_or(std::sinh(cfg.r0));
    const double f0p = cfg.f0_prime.value_or(std::cosh(cfg.r0));
    const auto grid = log_grid(cfg.r0, cfg.r_max, cfg.points_per_decade);
    return warp_from_curvature(K, cfg.n, f0, f0p, grid);
}

PotentialSpec build_potential(const ScenarioConfig& cfg) {
    PotentialSpec spec = builtin_family(cfg.pot_family, cfg.pot_params, cfg.r0, cfg.r_max);
    if (cfg.pot_split) {
        const bool built_in_v1 = cfg.pot_family == "power" || cfg.pot_family == "oscillatory";
        if (*cfg.pot_split == "V2" && built_in_v1)
            std::swap(spec.V1, spec.V2);
        else if (*cfg.pot_split == "V1" && cfg.pot_family == "longrange")
            std::swap(spec.V1, spec.V2);
    }
    return spec;
}

namespace {

std::string resolve_theorem(const ScenarioConfig& cfg) {
    if (cfg.theorem != "auto") return cfg.theorem;
    switch (cfg.version) {
        case EnergyVersion::Basic: return "basic";
        case EnergyVersion::Gradient: return "gradient";
        case EnergyVersion::Mixed: return "mixed";
        case EnergyVersion::GoodBound: return "goodbound";
    }
    return "basic";
}

double measure_curvature_amplitude(const WarpedMetric& M, double tail_start, double ppd) {
    double amp = 0.0;
    for (double r : log_grid(tail_start, M.r_max(), ppd))
        amp = std::max(amp, 0.5 * r * std::abs(radial_curvature(M, r) + 1.0));
    return amp;
}

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    ScenarioResult res;
    res.config = cfg;
    res.metric = build_metric(cfg);
    res.potential = build_potential(cfg);

    res.geo = extract_asymptotics(res.metric, cfg.a4, cfg.a5, cfg.tail_start,
                                  cfg.points_per_decade);
    if (cfg.delta2_override)
        res.geo.delta2 = *cfg.delta2_override;
    res.pot_asym = extract_potential_asymptotics(res.potential, cfg.tail_start,
                                                 cfg.points_per_decade);
    res.curvature_A = measure_curvature_amplitude(res.metric, cfg.tail_start,
                                                  cfg.points_per_decade);

    // energy configuration with resolved parameters
    res.ecfg.version = cfg.version;
    res.ecfg.sigma = cfg.sigma;
    res.ecfg.m = cfg.m;
    res.ecfg.t = cfg.t;
    res.ecfg.s = cfg.s.value_or(cfg.mu * (1.0 - 1e-3));
    res.ecfg.lambda = cfg.solve.lambda;
    res.ecfg.a4 = res.geo.a4;
    res.ecfg.a5 = res.geo.a5;
    res.ecfg.rho_anchor = cfg.anchor.value_or(cfg.solve.r_start);

    const auto grid = log_grid(cfg.solve.r_start, cfg.solve.r_end, cfg.points_per_decade);
    res.modes = integrate_modes(res.metric, res.potential, cfg.solve, grid);
    res.norms = sphere_norms(res.metric, res.modes);

    const RadialProfile rho =
        rho_weight(res.ecfg.a4, res.ecfg.a5, res.ecfg.rho_anchor,
                   std::min(cfg.solve.r_start, res.ecfg.rho_anchor), cfg.solve.r_end);
    res.tv = transform_v(res.modes, rho, cfg.m, cfg.solve.lambda);
    res.curve = energy_curve(res.ecfg, res.metric, res.potential, res.tv);

    // hypothesis block: threshold constraints plus lambda > lambda_star
    const std::string theorem = resolve_theorem(cfg);
    try {
        if (theorem == "basic")
            res.threshold = basic_threshold(res.pot_asym.a1, res.pot_asym.a2, res.geo.a4, cfg.mu,
                                            res.geo.delta, res.geo.a3);
        else if (theorem == "gradient")
            res.threshold = gradient_threshold(res.pot_asym.a1, res.pot_asym.a2, res.geo.a4,
                                               cfg.mu, res.geo.delta1, res.geo.delta2, res.geo.a3);
        else if (theorem == "mixed")
            res.threshold = mixed_threshold(res.pot_asym.a1, res.pot_asym.a2, res.geo.a4, cfg.mu,
                                            res.geo.delta, res.geo.delta1, res.geo.a3);
        else if (theorem == "goodbound")
            res.threshold = goodbound_threshold(cfg.n, res.curvature_A);
    } catch (const ConstraintViolatedError& e) {
        res.threshold_error = e.constraint;
        res.hypothesis.push_back({e.constraint, 0.0, false});
    }
    if (res.threshold) {
        res.hypothesis = res.threshold->constraints;
        if (theorem == "goodbound") {
            // free-Laplacian theorem: the potential must vanish
            const double pot_size = std::max(res.pot_asym.a1,
                                             std::max(res.pot_asym.a2, res.pot_asym.v2_sup));
            res.hypothesis.push_back(
                {"potential vanishes (goodbound)", -pot_size, pot_size <= 1e-12});
        }
        res.hypothesis.push_back({"lambda > lambda_star",
                                  cfg.solve.lambda - res.threshold->lambda_star,
                                  cfg.solve.lambda > res.threshold->lambda_star});
    }
    res.hypothesis_pass = !res.hypothesis.empty();
    for (const auto& h : res.hypothesis)
        if (!h.ok) res.hypothesis_pass = false;

    res.monotonicity = check_monotone_F(res.curve, cfg.r_from);

    try {
        res.initial_pos = initial_positivity(res.ecfg, res.metric, res.potential, res.tv,
                                             cfg.R0.value_or(cfg.tail_start));
    } catch (const Error& e) {
        res.initial_pos_error = e.what();
    }

    try {
        res.growth = check_growth(res.norms, cfg.mu, cfg.tail_start, cfg.slope_margin);
    } catch (const Error& e) {
        res.growth_error = e.what();
    }
    res.growth_asserted = res.hypothesis_pass;

    if (!res.hypothesis_pass)
        res.verdict = "hypothesis-failed";
    else if (res.growth && res.growth->pass)
        res.verdict = "pass";
    else
        res.verdict = "fail";
    return res;
}

Json scenario_summary(const ScenarioResult& res) {
    const ScenarioConfig& cfg = res.config;
    Json j;
    j["schema_version"] = 1;
    j["name"] = cfg.name;

    Json jc;
    jc["metric"] = {{"family", cfg.metric_family}, {"n", cfg.n}, {"r0", cfg.r0},
                    {"r_max", cfg.r_max}};
    if (cfg.metric_family == "curvature") {
        jc["metric"]["profile"] = cfg.curvature_profile;
        jc["metric"]["A"] = cfg.A;
    }
    if (cfg.metric_family == "power") jc["metric"]["p"] = cfg.warp_exponent;
    jc["potential"] = {{"family", cfg.pot_family}, {"params", cfg.pot_params}};
    jc["solve"] = {{"lambda", cfg.solve.lambda},
                   {"r_start", cfg.solve.r_start},
                   {"r_end", cfg.solve.r_end},
                   {"modes", cfg.solve.modes}};
    jc["energy"] = {{"version", to_string(cfg.version)}, {"m", res.ecfg.m}, {"t", res.ecfg.t},
                    {"s", res.ecfg.s}, {"a4", res.ecfg.a4}, {"a5", res.ecfg.a5},
                    {"anchor", res.ecfg.rho_anchor}};
    if (cfg.version == EnergyVersion::GoodBound) jc["energy"]["sigma"] = cfg.sigma;
    jc["verify"] = {{"mu", cfg.mu}, {"tail_start", cfg.tail_start}, {"r_from", cfg.r_from},
                    {"slope_margin", cfg.slope_margin}};
    j["config"] = jc;

    j["geometry_asymptotics"] = {{"a3", res.geo.a3},       {"a4", res.geo.a4},
                                 {"a5", res.geo.a5},       {"delta", res.geo.delta},
                                 {"delta1", res.geo.delta1}, {"delta2", res.geo.delta2},
                                 {"A", res.geo.A},         {"tail_start", res.geo.tail_start},
                                 {"curvature_A", res.curvature_A}};
    j["potential_asymptotics"] = {{"a1", res.pot_asym.a1},
                                  {"a2", res.pot_asym.a2},
                                  {"v2_sup", res.pot_asym.v2_sup},
                                  {"v2_warning", res.pot_asym.v2_warning}};

    if (res.threshold) {
        const ThresholdReport& t = *res.threshold;
        Json jt;
        jt["theorem"] = t.theorem;
        jt["lambda_star"] = t.lambda_star;
        jt["excluded"] = "eigenvalues with lambda > lambda_star (strict)";
        Json jb = Json::array();
        for (const auto& [name, v] : t.branches)
            jb.push_back({{"name", name}, {"value", v}});
        jt["branches"] = jb;
        if (t.minimizer) jt["minimizer"] = *t.minimizer;
        j["threshold"] = jt;
    } else {
        j["threshold"] = {{"error", res.threshold_error}};
    }

    Json jh = Json::array();
    for (const auto& h : res.hypothesis)
        jh.push_back({{"name", h.name}, {"margin", h.margin}, {"ok", h.ok}});
    j["hypothesis"] = {{"pass", res.hypothesis_pass}, {"checks", jh}};

    Json jm;
    jm["pass"] = res.monotonicity.pass();
    jm["r_from"] = res.monotonicity.r_from;
    jm["first_positive_radius"] = res.monotonicity.first_positive_radius;
    jm["violations"] = res.monotonicity.violations.size();
    jm["energy_floor"] = res.monotonicity.energy_floor;
    j["monotonicity"] = jm;

    if (res.initial_pos) {
        j["initial_positivity"] = {{"m0", res.initial_pos->m0},
                                   {"R0", res.initial_pos->R0},
                                   {"value_scaled", res.initial_pos->value_scaled},
                                   {"log_scale", res.initial_pos->log_scale}};
    } else {
        j["initial_positivity"] = {{"error", res.initial_pos_error}};
    }

    if (res.growth) {
        j["growth"] = {{"asserted", res.growth_asserted},
                       {"pass", res.growth->pass},
                       {"slope", res.growth->slope},
                       {"slope_stderr", res.growth->slope_stderr},
                       {"margin", res.growth->margin},
                       {"min_weighted_tail", res.growth->min_weighted_tail},
                       {"weighted_at_tail_start", res.growth->weighted_at_tail_start}};
    } else {
        j["growth"] = {{"asserted", res.growth_asserted}, {"error", res.growth_error}};
    }

    j["verdict"] = res.verdict;
    return j;
}

void write_scenario_outputs(const ScenarioResult& res, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    // geometry.csv
    {
        const auto grid = log_grid(res.config.solve.r_start, res.config.solve.r_end,
                                   res.config.points_per_decade);
        std::vector<double> f(grid.size()), fp(grid.size()), fpp(grid.size()), dr(grid.size()),
            krad(grid.size());
        const RadialProfile drp = mean_curvature(res.metric);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const ProfileSample s = res.metric.f.eval(grid[i]);
            f[i] = s.value;
            fp[i] = s.d1;
            fpp[i] = s.d2;
            dr[i] = drp.value(grid[i]);
            krad[i] = -s.d2 / s.value;
        }
        write_csv(out_dir / "geometry.csv",
                  {{"r", grid}, {"f", f}, {"f_prime", fp}, {"f_double_prime", fpp},
                   {"delta_r", dr}, {"K_rad", krad}});
    }

    // potential.csv
    {
        const auto grid = log_grid(res.config.solve.r_start, res.config.solve.r_end,
                                   res.config.points_per_decade);
        std::vector<double> v1(grid.size()), v2(grid.size()), dv2(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            v1[i] = res.potential.V1.value(grid[i]);
            const ProfileSample s = res.potential.V2.eval(grid[i]);
            v2[i] = s.value;
            dv2[i] = s.d1;
        }
        write_csv(out_dir / "potential.csv",
                  {{"r", grid}, {"V1", v1}, {"V2", v2}, {"dV2_dr", dv2}});
    }

    // modes.csv, long format
    {
        std::vector<double> r, l, u, du;
        for (const auto& md : res.modes)
            for (std::size_t i = 0; i < md.grid.size(); ++i) {
                r.push_back(md.grid[i]);
                l.push_back(md.l);
                u.push_back(md.u[i]);
                du.push_back(md.du[i]);
            }
        write_csv(out_dir / "modes.csv", {{"r", r}, {"l", l}, {"u_l", u}, {"u_l_prime", du}});
    }

    // norms.csv
    write_csv(out_dir / "norms.csv",
              {{"r", res.norms.grid}, {"M2", res.norms.M2}, {"N2", res.norms.N2}});

    // energy.csv
    {
        std::vector<CsvColumn> cols = {{"r", res.curve.grid},
                                       {"F", res.curve.F},
                                       {"dF_analytic", res.curve.dF_analytic},
                                       {"dF_fd", res.curve.dF_fd}};
        static const char* names[7] = {"group1", "group2", "group3", "group4",
                                       "group5", "group6", "group7"};
        for (int k = 0; k < 7; ++k)
            cols.emplace_back(names[k], res.curve.groups[k]);
        cols.emplace_back("P", res.curve.si.P);
        cols.emplace_back("K", res.curve.si.K);
        cols.emplace_back("T", res.curve.si.T);
        cols.emplace_back("X", res.curve.si.X);
        write_csv(out_dir / "energy.csv", cols);
    }

    atomic_write(out_dir / "summary.json", scenario_summary(res).dump(2) + "\n");
}

} // namespace klab
