#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klab/energy.hpp"
#include "klab/modes.hpp"

namespace klab {

/// One parsed TOML-style value. Sections flatten into dotted key paths.
struct ConfigValue {
    enum class Kind { Number, String, Bool, NumberArray, StringArray };
    Kind kind = Kind::Number;
    double num = 0.0;
    std::string str;
    bool flag = false;
    std::vector<double> nums;
    std::vector<std::string> strs;
    int line = 0;
};

using FlatConfig = std::map<std::string, ConfigValue>;

/// Minimal TOML subset: [section] headers, key = value lines, values are
/// quoted strings, numbers, true/false, or homogeneous [a, b, ...] arrays;
/// '#' starts a comment. Duplicate keys are rejected.
FlatConfig parse_toml_text(const std::string& text, const std::string& source);

/// Fully validated scenario description. Anything optional here is resolved
/// at run time (auto-extracted constants, derived defaults).
struct ScenarioConfig {
    std::string name;

    // [metric]
    std::string metric_family; // euclidean | hyperbolic | power | curvature
    int n = 3;
    double r0 = 1.0;
    double r_max = 40.0;
    double warp_exponent = 1.0;             // power family
    std::string curvature_profile = "sinlog"; // curvature family: sinlog | const | power
    double A = 0.0;                         // curvature amplitude
    double curvature_K0 = -1.0;             // curvature "const": K = K0
    double curvature_exponent = 1.0;        // curvature "power": K = -1 + 2A/r^q
    std::optional<double> f0;               // curvature start data; default sinh/cosh at r0
    std::optional<double> f0_prime;

    // [grid]
    double points_per_decade = 64.0;

    // [potential]
    std::string pot_family = "none";
    std::vector<double> pot_params;
    std::optional<std::string> pot_split; // V1 | V2 override

    // [solve]
    SolveConfig solve;

    // [energy]
    EnergyVersion version = EnergyVersion::Basic;
    double sigma = -1.0;
    double m = 0.0;
    double t = 0.5;
    std::optional<double> s;      // default 0.999 * mu
    std::optional<double> anchor; // default r_start
    std::optional<double> a4;     // default extracted
    std::optional<double> a5;

    // [verify]
    double mu = 1.0;
    double tail_start = 4.0;
    double r_from = 5.0;
    std::optional<double> R0; // default tail_start
    double slope_margin = 0.05;
    std::optional<double> delta_declared;  // optional declared bound, validated at parse time
    std::optional<double> delta2_override; // manual angular-gradient bound
    std::string theorem = "auto";

    // [output]
    std::string out_dir; // default out/<name>
};

ScenarioConfig parse_config(const std::filesystem::path& path);
ScenarioConfig parse_config_text(const std::string& text, const std::string& name_hint);

/// Sweep: a base scenario plus axes over lambda, curvature amplitude A and
/// potential strength c. The cartesian product becomes one scenario per
/// combination, named deterministically.
struct SweepConfig {
    ScenarioConfig base;
    std::vector<double> lambdas;
    std::vector<double> amplitudes;
    std::vector<double> strengths;
};

SweepConfig parse_sweep_config(const std::filesystem::path& path);
std::vector<ScenarioConfig> expand_sweep(const SweepConfig& sweep);

} // namespace klab
