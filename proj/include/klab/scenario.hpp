#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "klab/config.hpp"
#include "klab/thresholds.hpp"
#include "klab/verify.hpp"

namespace klab {

using Json = nlohmann::ordered_json;

WarpedMetric build_metric(const ScenarioConfig& cfg);
PotentialSpec build_potential(const ScenarioConfig& cfg);

/// Everything one scenario produces. Each sub-report embeds the inputs that
/// produced it, so verdicts are reproducible from the stored numbers alone.
struct ScenarioResult {
    ScenarioConfig config;

    GeometryAsymptotics geo;
    PotentialAsymptotics pot_asym;
    double curvature_A = 0.0; // measured sup of r |K_rad + 1| / 2 on the tail

    std::optional<ThresholdReport> threshold;
    std::string threshold_error;
    std::vector<ConstraintCheck> hypothesis;
    bool hypothesis_pass = false;

    MonotonicityReport monotonicity;

    std::optional<InitialPositivityReport> initial_pos;
    std::string initial_pos_error;

    std::optional<GrowthReport> growth;
    std::string growth_error;
    bool growth_asserted = false;

    /// "pass" (hypotheses hold and growth confirmed), "hypothesis-failed"
    /// (growth not asserted), or "fail" (hypotheses hold but growth broke:
    /// a conformance bug).
    std::string verdict;

    // raw data, for CSV emission
    WarpedMetric metric;
    PotentialSpec potential;
    std::vector<ModeSolution> modes;
    SphereNorms norms;
    TransformedModes tv;
    EnergyConfig ecfg;
    EnergyCurve curve;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

Json scenario_summary(const ScenarioResult& res);

/// CSV curves + summary.json under out_dir, all written atomically.
void write_scenario_outputs(const ScenarioResult& res, const std::filesystem::path& out_dir);

} // namespace klab
