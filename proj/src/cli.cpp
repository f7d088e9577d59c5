#include "klab/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "klab/grid.hpp"
#include "klab/report.hpp"
#include "klab/scenario.hpp"

namespace klab {

namespace {

int default_jobs() {
    if (const char* env = std::getenv("KLAB_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void print_threshold(const ThresholdReport& rep) {
    std::cout << "theorem: " << rep.theorem << "\n";
    std::cout << "lambda_star = " << format_double(rep.lambda_star) << "\n";
    if (rep.minimizer) {
        const char* label = rep.theorem == "gradient" ? "s0_star" : "sigma_star";
        std::cout << label << " = " << format_double(*rep.minimizer) << "\n";
    }
    for (const auto& [name, value] : rep.branches)
        std::cout << "branch '" << name << "' = " << format_double(value) << "\n";
    for (const auto& c : rep.constraints)
        std::cout << "constraint '" << c.name << "': " << (c.ok ? "ok" : "FAIL")
                  << " (margin " << format_compact(c.margin) << ")\n";
}

Json threshold_json(const ThresholdReport& rep) {
    Json j;
    j["schema_version"] = 1;
    j["theorem"] = rep.theorem;
    j["lambda_star"] = rep.lambda_star;
    if (rep.minimizer) j["minimizer"] = *rep.minimizer;
    Json jb = Json::array();
    for (const auto& [name, value] : rep.branches)
        jb.push_back({{"name", name}, {"value", value}});
    j["branches"] = jb;
    Json jcs = Json::array();
    for (const auto& c : rep.constraints)
        jcs.push_back({{"name", c.name}, {"margin", c.margin}, {"ok", c.ok}});
    j["constraints"] = jcs;
    Json ji = Json::array();
    for (const auto& [name, value] : rep.inputs)
        ji.push_back({{"name", name}, {"value", value}});
    j["inputs"] = ji;
    return j;
}

int cmd_threshold(const std::string& theorem, double a1, double a2, double a4, double mu,
                  double delta, double delta1, double delta2, double a3, int n, double A,
                  bool as_json) {
    ThresholdReport rep;
    try {
        if (theorem == "basic")
            rep = basic_threshold(a1, a2, a4, mu, delta, a3);
        else if (theorem == "gradient")
            rep = gradient_threshold(a1, a2, a4, mu, delta1, delta2, a3);
        else if (theorem == "mixed")
            rep = mixed_threshold(a1, a2, a4, mu, delta, delta1, a3);
        else if (theorem == "cor3")
            rep = cor_hessian_bound(n, A);
        else if (theorem == "cor4")
            rep = cor_mixed_curvature_bound(n, A);
        else if (theorem == "goodbound")
            rep = goodbound_threshold(n, A);
        else {
            std::cerr << "unknown theorem '" << theorem << "'\n";
            return 2;
        }
    } catch (const ConstraintViolatedError& e) {
        std::cerr << "constraint violated: " << e.constraint << " (" << e.what() << ")\n";
        return 1;
    }
    if (as_json)
        std::cout << threshold_json(rep).dump(2) << "\n";
    else
        print_threshold(rep);
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_override) {
    const ScenarioConfig cfg = parse_config(config_path);
    const WarpedMetric metric = build_metric(cfg);
    const PotentialSpec pot = build_potential(cfg);
    const auto grid = log_grid(cfg.solve.r_start, cfg.solve.r_end, cfg.points_per_decade);
    const auto modes = integrate_modes(metric, pot, cfg.solve, grid);
    const SphereNorms norms = sphere_norms(metric, modes);

    const std::filesystem::path out = out_override.empty() ? cfg.out_dir : out_override;
    std::filesystem::create_directories(out);
    {
        std::vector<double> r, l, u, du;
        for (const auto& md : modes)
            for (std::size_t i = 0; i < md.grid.size(); ++i) {
                r.push_back(md.grid[i]);
                l.push_back(md.l);
                u.push_back(md.u[i]);
                du.push_back(md.du[i]);
            }
        write_csv(out / "modes.csv", {{"r", r}, {"l", l}, {"u_l", u}, {"u_l_prime", du}});
    }
    write_csv(out / "norms.csv", {{"r", norms.grid}, {"M2", norms.M2}, {"N2", norms.N2}});
    Json j;
    j["schema_version"] = 1;
    j["name"] = cfg.name;
    j["lambda"] = cfg.solve.lambda;
    j["modes"] = cfg.solve.modes;
    atomic_write(out / "simulate.json", j.dump(2) + "\n");
    std::cout << cfg.name << ": wrote modes and sphere norms to " << out.string() << "\n";
    return 0;
}

int cmd_energy(const std::string& config_path, const std::string& out_override) {
    const ScenarioConfig cfg = parse_config(config_path);
    const ScenarioResult res = run_scenario(cfg);
    const std::filesystem::path out = out_override.empty() ? cfg.out_dir : out_override;
    write_scenario_outputs(res, out);

    // identity diagnostics: worst interior deviation, scaled locally
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < res.curve.grid.size(); ++i) {
        const double scale =
            std::abs(res.curve.F[i]) + std::abs(res.curve.dF_analytic[i]);
        if (scale > 0.0)
            worst = std::max(worst, std::abs(res.curve.dF_analytic[i] - res.curve.dF_fd[i]) / scale);
    }
    std::cout << cfg.name << ": energy curves written to " << out.string()
              << " (max interior derivative-identity deviation " << format_compact(worst)
              << ")\n";
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& out_override) {
    const ScenarioConfig cfg = parse_config(config_path);
    const ScenarioResult res = run_scenario(cfg);
    const std::filesystem::path out = out_override.empty() ? cfg.out_dir : out_override;
    write_scenario_outputs(res, out);
    std::cout << cfg.name << ": " << res.verdict << " (summary in "
              << (out / "summary.json").string() << ")\n";
    return res.verdict == "fail" ? 1 : 0;
}

int cmd_sweep(const std::string& sweep_path, int jobs, const std::string& out_override) {
    const SweepConfig sweep = parse_sweep_config(sweep_path);
    std::vector<ScenarioConfig> scenarios = expand_sweep(sweep);

    std::vector<ScenarioResult> results(scenarios.size());
    std::vector<std::string> errors(scenarios.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= scenarios.size()) break;
            try {
                results[i] = run_scenario(scenarios[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(scenarios.size())));
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads; ++k)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();

    const std::filesystem::path out_root = out_override.empty() ? "out" : out_override;
    // merge deterministically by scenario name order
    std::vector<std::size_t> order(scenarios.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scenarios[a].name < scenarios[b].name;
    });

    Json merged;
    merged["schema_version"] = 1;
    merged["sweep"] = sweep_path;
    Json arr = Json::array();
    bool any_fail = false;
    for (std::size_t idx : order) {
        if (!errors[idx].empty()) {
            arr.push_back({{"name", scenarios[idx].name}, {"error", errors[idx]}});
            any_fail = true;
            std::cout << scenarios[idx].name << ": error (" << errors[idx] << ")\n";
            continue;
        }
        write_scenario_outputs(results[idx], out_root / scenarios[idx].name);
        arr.push_back(scenario_summary(results[idx]));
        if (results[idx].verdict == "fail") any_fail = true;
        std::cout << scenarios[idx].name << ": " << results[idx].verdict << "\n";
    }
    merged["scenarios"] = arr;
    atomic_write(out_root / "sweep_summary.json", merged.dump(2) + "\n");
    std::cout << "sweep summary written to " << (out_root / "sweep_summary.json").string() << "\n";
    return any_fail ? 1 : 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"klab: Schrodinger operators -Delta+V on rotationally symmetric manifolds;\n"
                 "energy monotonicity, eigenvalue-exclusion thresholds, eigen-solution growth"};
    app.require_subcommand(1);

    // threshold
    auto* th = app.add_subcommand("threshold", "evaluate an eigenvalue-exclusion bound");
    std::string theorem;
    double a1 = 0, a2 = 0, a4 = 0, mu = 1, delta = 0, delta1 = 0, delta2 = 0, a3 = 2, A = 0;
    int n = 3;
    bool th_json = false;
    th->add_option("--theorem", theorem, "basic|gradient|mixed|cor3|cor4|goodbound")->required();
    th->add_option("--a1", a1, "sup of r|V1|");
    th->add_option("--a2", a2, "sup of r|dV2/dr|");
    th->add_option("--a4", a4, "limit of Delta r");
    th->add_option("--mu", mu, "growth exponent");
    th->add_option("--delta", delta, "sup of |dbar|");
    th->add_option("--delta1", delta1, "sup of |d dbar/dr|");
    th->add_option("--delta2", delta2, "angular gradient bound of dbar");
    th->add_option("--a3", a3, "Hessian lower bound");
    th->add_option("--n", n, "dimension");
    th->add_option("--A", A, "curvature pinching amplitude");
    th->add_flag("--json", th_json, "emit JSON instead of text");

    // simulate / energy / verify
    std::string sim_cfg, sim_out, en_cfg, en_out, ver_cfg, ver_out;
    auto* sim = app.add_subcommand("simulate", "integrate modes and sphere norms");
    sim->add_option("config", sim_cfg, "scenario config file")->required();
    sim->add_option("--out", sim_out, "output directory override");
    auto* en = app.add_subcommand("energy", "energy curves and the derivative identity");
    en->add_option("config", en_cfg, "scenario config file")->required();
    en->add_option("--out", en_out, "output directory override");
    auto* ver = app.add_subcommand("verify", "full scenario bundle with verdicts");
    ver->add_option("config", ver_cfg, "scenario config file")->required();
    ver->add_option("--out", ver_out, "output directory override");

    // sweep
    std::string sweep_cfg, sweep_out;
    int jobs = default_jobs();
    auto* sw = app.add_subcommand("sweep", "scenario matrix with a parallel worker pool");
    sw->add_option("config", sweep_cfg, "sweep config file")->required();
    sw->add_option("--jobs", jobs, "worker threads (default KLAB_JOBS or hardware)");
    sw->add_option("--out", sweep_out, "output root directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (th->parsed())
            return cmd_threshold(theorem, a1, a2, a4, mu, delta, delta1, delta2, a3, n, A, th_json);
        if (sim->parsed())
            return cmd_simulate(sim_cfg, sim_out);
        if (en->parsed())
            return cmd_energy(en_cfg, en_out);
        if (ver->parsed())
            return cmd_verify(ver_cfg, ver_out);
        if (sw->parsed())
            return cmd_sweep(sweep_cfg, jobs, sweep_out);
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace klab
