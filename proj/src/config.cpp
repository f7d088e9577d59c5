#include "klab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "klab/report.hpp"

namespace klab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Cut a '#' comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

bool parse_number(const std::string& s, double& out) {
    const char* p = s.c_str();
    char* end = nullptr;
    out = std::strtod(p, &end);
    return end != p && *end == '\0';
}

ConfigValue parse_value(const std::string& raw, const std::string& key, int line) {
    ConfigValue v;
    v.line = line;
    const std::string s = trim(raw);
    if (s.empty())
        throw ParseError(key, "empty value");
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            throw ParseError(key, "unterminated string");
        v.kind = ConfigValue::Kind::String;
        v.str = s.substr(1, s.size() - 2);
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = ConfigValue::Kind::Bool;
        v.flag = (s == "true");
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']')
            throw ParseError(key, "unterminated array");
        const std::string body = trim(s.substr(1, s.size() - 2));
        v.kind = ConfigValue::Kind::NumberArray;
        if (body.empty()) return v;
        std::stringstream ss(body);
        std::string item;
        bool strings = false, first = true;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                throw ParseError(key, "empty array element");
            const bool is_str = item.front() == '"';
            if (first) {
                strings = is_str;
                v.kind = strings ? ConfigValue::Kind::StringArray : ConfigValue::Kind::NumberArray;
                first = false;
            } else if (is_str != strings) {
                throw ParseError(key, "mixed array element types");
            }
            if (is_str) {
                if (item.size() < 2 || item.back() != '"')
                    throw ParseError(key, "unterminated string in array");
                v.strs.push_back(item.substr(1, item.size() - 2));
            } else {
                double d;
                if (!parse_number(item, d))
                    throw ParseError(key, "bad number '" + item + "' in array");
                v.nums.push_back(d);
            }
        }
        return v;
    }
    double d;
    if (!parse_number(s, d))
        throw ParseError(key, "bad value '" + s + "'");
    v.kind = ConfigValue::Kind::Number;
    v.num = d;
    return v;
}

} // namespace

FlatConfig parse_toml_text(const std::string& text, const std::string& source) {
    FlatConfig out;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ParseError(source + ":" + std::to_string(lineno), "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!valid_key(section))
                throw ParseError(source + ":" + std::to_string(lineno), "bad section name '" + section + "'");
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError(source + ":" + std::to_string(lineno), "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        if (!valid_key(key))
            throw ParseError(source + ":" + std::to_string(lineno), "bad key '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        if (out.count(full))
            throw ParseError(full, "duplicate key");
        out.emplace(full, parse_value(s.substr(eq + 1), full, lineno));
    }
    return out;
}

namespace {

/// Typed access over the flat map; tracks consumption so leftovers are
/// reported as unknown keys.
class ConfigReader {
public:
    explicit ConfigReader(FlatConfig values) : values_(std::move(values)) {}

    std::optional<double> num(const std::string& key) {
        const ConfigValue* v = take(key);
        if (!v) return std::nullopt;
        if (v->kind != ConfigValue::Kind::Number)
            throw ParseError(key, "expected a number");
        return v->num;
    }

    double num_or(const std::string& key, double fallback) {
        auto v = num(key);
        return v ? *v : fallback;
    }

    std::optional<int> integer(const std::string& key) {
        auto v = num(key);
        if (!v) return std::nullopt;
        const double rounded = std::nearbyint(*v);
        if (std::abs(*v - rounded) > 0.0)
            throw ParseError(key, "expected an integer");
        return static_cast<int>(rounded);
    }

    std::optional<std::string> str(const std::string& key) {
        const ConfigValue* v = take(key);
        if (!v) return std::nullopt;
        if (v->kind != ConfigValue::Kind::String)
            throw ParseError(key, "expected a string");
        return v->str;
    }

    std::string str_or(const std::string& key, const std::string& fallback) {
        auto v = str(key);
        return v ? *v : fallback;
    }

    std::optional<std::vector<double>> num_array(const std::string& key) {
        const ConfigValue* v = take(key);
        if (!v) return std::nullopt;
        if (v->kind != ConfigValue::Kind::NumberArray)
            throw ParseError(key, "expected an array of numbers");
        return v->nums;
    }

    void finish() const {
        for (const auto& [key, value] : values_)
            if (!used_.count(key))
                throw ParseError(key, "unknown key");
    }

private:
    const ConfigValue* take(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    FlatConfig values_;
    std::set<std::string> used_;
};

EnergyVersion parse_version(const std::string& v, const std::string& key) {
    if (v == "basic") return EnergyVersion::Basic;
    if (v == "gradient") return EnergyVersion::Gradient;
    if (v == "mixed") return EnergyVersion::Mixed;
    if (v == "goodbound") return EnergyVersion::GoodBound;
    throw ParseError(key, "unknown energy version '" + v + "'");
}

} // namespace

ScenarioConfig parse_config_text(const std::string& text, const std::string& name_hint) {
    ConfigReader r(parse_toml_text(text, name_hint));
    ScenarioConfig c;
    c.name = r.str_or("name", name_hint);

    c.metric_family = r.str_or("metric.family", "hyperbolic");
    if (c.metric_family != "euclidean" && c.metric_family != "hyperbolic" &&
        c.metric_family != "power" && c.metric_family != "curvature")
        throw ParseError("metric.family", "unknown family '" + c.metric_family + "'");
    c.n = r.integer("metric.n").value_or(3);
    if (c.n < 2) throw ParseError("metric.n", "dimension must be >= 2");
    c.r0 = r.num_or("metric.r0", 1.0);
    if (!(c.r0 > 0.0)) throw ParseError("metric.r0", "must be positive");
    c.r_max = r.num_or("metric.r_max", 40.0);
    if (!(c.r_max > c.r0)) throw ParseError("metric.r_max", "must exceed r0");
    c.warp_exponent = r.num_or("metric.p", 1.0);
    c.curvature_profile = r.str_or("metric.profile", "sinlog");
    if (c.curvature_profile != "sinlog" && c.curvature_profile != "const" &&
        c.curvature_profile != "power")
        throw ParseError("metric.profile", "unknown curvature profile '" + c.curvature_profile + "'");
    c.A = r.num_or("metric.A", 0.0);
    if (c.A < 0.0) throw ParseError("metric.A", "must be non-negative");
    c.curvature_K0 = r.num_or("metric.K0", -1.0);
    c.curvature_exponent = r.num_or("metric.exponent", 1.0);
    c.f0 = r.num("metric.f0");
    c.f0_prime = r.num("metric.f0_prime");

    c.points_per_decade = r.num_or("grid.points_per_decade", 64.0);
    if (!(c.points_per_decade > 0.0))
        throw ParseError("grid.points_per_decade", "must be positive");

    c.pot_family = r.str_or("potential.family", "none");
    if (c.pot_family != "none" && c.pot_family != "power" && c.pot_family != "oscillatory" &&
        c.pot_family != "longrange")
        throw ParseError("potential.family", "unknown family '" + c.pot_family + "'");
    c.pot_params = r.num_array("potential.params").value_or(std::vector<double>{});
    if (c.pot_family != "none" && c.pot_params.size() != 2)
        throw ParseError("potential.params", "family '" + c.pot_family + "' expects two parameters");
    c.pot_split = r.str("potential.split");
    if (c.pot_split && *c.pot_split != "V1" && *c.pot_split != "V2")
        throw ParseError("potential.split", "must be \"V1\" or \"V2\"");

    const auto lambda = r.num("solve.lambda");
    if (!lambda) throw ParseError("solve.lambda", "missing (the spectral parameter is required)");
    c.solve.lambda = *lambda;
    c.solve.r_start = r.num_or("solve.r_start", c.r0);
    c.solve.r_end = r.num_or("solve.r_end", c.r_max);
    if (!(c.solve.r_start >= c.r0))
        throw ParseError("solve.r_start", "below metric r0");
    if (!(c.solve.r_end > c.solve.r_start) || !(c.solve.r_end <= c.r_max))
        throw ParseError("solve.r_end", "need r_start < r_end <= r_max");
    c.solve.abs_tol = r.num_or("solve.abs_tol", 1e-10);
    c.solve.rel_tol = r.num_or("solve.rel_tol", 1e-10);
    if (!(c.solve.abs_tol > 0.0) || !(c.solve.rel_tol > 0.0))
        throw ParseError("solve.abs_tol", "tolerances must be positive");
    {
        auto modes = r.num_array("solve.modes").value_or(std::vector<double>{0.0});
        c.solve.modes.clear();
        for (double mraw : modes) {
            const int l = static_cast<int>(std::nearbyint(mraw));
            if (std::abs(mraw - l) > 0.0 || l < 0)
                throw ParseError("solve.modes", "mode indices must be non-negative integers");
            c.solve.modes.push_back(l);
        }
        int lmax_default = 0;
        for (int l : c.solve.modes) lmax_default = std::max(lmax_default, l);
        c.solve.l_max = r.integer("solve.l_max").value_or(lmax_default);
        if (c.solve.l_max < lmax_default)
            throw ParseError("solve.l_max", "smaller than the largest excited mode");
        c.solve.initial.clear();
        if (auto init = r.num_array("solve.initial")) {
            if (init->size() != 2 * c.solve.modes.size())
                throw ParseError("solve.initial", "need one (u, u') pair per excited mode");
            for (std::size_t i = 0; i < c.solve.modes.size(); ++i)
                c.solve.initial.push_back({(*init)[2 * i], (*init)[2 * i + 1]});
        } else {
            // regular-at-the-inner-boundary convention
            c.solve.initial.assign(c.solve.modes.size(), {1.0, 0.0});
        }
    }

    c.version = parse_version(r.str_or("energy.version", "basic"), "energy.version");
    c.sigma = r.num_or("energy.sigma", -1.0);
    if (c.version == EnergyVersion::GoodBound && !(c.sigma >= 0.0 && c.sigma <= 1.0))
        throw ParseError("energy.sigma", "goodbound version requires sigma in [0,1]");
    c.m = r.num_or("energy.m", 0.0);
    if (c.m < 0.0) throw ParseError("energy.m", "must be >= 0");
    c.t = r.num_or("energy.t", 0.5);
    if (!(c.t >= 0.0 && c.t < 1.0)) throw ParseError("energy.t", "must lie in [0, 1)");
    c.s = r.num("energy.s");
    c.anchor = r.num("energy.anchor");
    if (c.anchor && !(*c.anchor > 0.0)) throw ParseError("energy.anchor", "must be positive");
    c.a4 = r.num("energy.a4");
    c.a5 = r.num("energy.a5");

    c.mu = r.num_or("verify.mu", 1.0);
    if (!(c.mu > 0.0)) throw ParseError("verify.mu", "must be positive");
    c.tail_start = r.num_or("verify.tail_start", c.solve.r_end / 10.0);
    if (!(c.tail_start > c.solve.r_start) || !(c.tail_start < c.solve.r_end))
        throw ParseError("verify.tail_start", "must lie inside (r_start, r_end)");
    c.r_from = r.num_or("verify.r_from", 5.0);
    c.R0 = r.num("verify.R0");
    c.slope_margin = r.num_or("verify.slope_margin", 0.05);
    c.delta_declared = r.num("verify.delta");
    if (c.delta_declared) {
        if (*c.delta_declared < 0.0)
            throw ParseError("verify.delta", "must be non-negative");
        if (!(c.mu > *c.delta_declared))
            throw ParseError("verify.mu", "constraint (mu > delta) violated: mu=" +
                                              format_compact(c.mu) + " <= delta=" +
                                              format_compact(*c.delta_declared));
    }
    c.delta2_override = r.num("verify.delta2");
    if (c.delta2_override && *c.delta2_override < 0.0)
        throw ParseError("verify.delta2", "must be non-negative");
    c.theorem = r.str_or("verify.theorem", "auto");
    if (c.theorem != "auto" && c.theorem != "basic" && c.theorem != "gradient" &&
        c.theorem != "mixed" && c.theorem != "goodbound")
        throw ParseError("verify.theorem", "unknown theorem '" + c.theorem + "'");

    c.out_dir = r.str_or("output.dir", "out/" + c.name);

    r.finish();
    return c;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string(), "cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.stem().string());
}

SweepConfig parse_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string(), "cannot open sweep file");
    std::stringstream ss;
    ss << in.rdbuf();
    ConfigReader r(parse_toml_text(ss.str(), path.string()));

    SweepConfig sweep;
    const auto base = r.str("sweep.base");
    if (!base)
        throw ParseError("sweep.base", "missing base scenario path");
    std::filesystem::path base_path = *base;
    if (base_path.is_relative())
        base_path = path.parent_path() / base_path;
    sweep.base = parse_config(base_path);
    sweep.lambdas = r.num_array("sweep.lambda").value_or(std::vector<double>{});
    sweep.amplitudes = r.num_array("sweep.A").value_or(std::vector<double>{});
    sweep.strengths = r.num_array("sweep.c").value_or(std::vector<double>{});
    r.finish();

    if (!sweep.amplitudes.empty() && sweep.base.metric_family != "curvature")
        throw ParseError("sweep.A", "amplitude axis needs a curvature-family metric");
    if (!sweep.strengths.empty() && sweep.base.pot_family == "none")
        throw ParseError("sweep.c", "strength axis needs a potential family");
    return sweep;
}

std::vector<ScenarioConfig> expand_sweep(const SweepConfig& sweep) {
    const std::vector<double> lams =
        sweep.lambdas.empty() ? std::vector<double>{sweep.base.solve.lambda} : sweep.lambdas;
    const std::vector<double> amps =
        sweep.amplitudes.empty() ? std::vector<double>{sweep.base.A} : sweep.amplitudes;
    const std::vector<double> cs =
        sweep.strengths.empty()
            ? std::vector<double>{sweep.base.pot_params.empty() ? 0.0 : sweep.base.pot_params[0]}
            : sweep.strengths;

    std::vector<ScenarioConfig> out;
    for (double lam : lams)
        for (double A : amps)
            for (double cstr : cs) {
                ScenarioConfig sc = sweep.base;
                sc.solve.lambda = lam;
                std::string suffix;
                if (!sweep.lambdas.empty()) suffix += "-lam" + format_compact(lam);
                if (!sweep.amplitudes.empty()) {
                    sc.A = A;
                    suffix += "-A" + format_compact(A);
                }
                if (!sweep.strengths.empty()) {
                    sc.pot_params[0] = cstr;
                    suffix += "-c" + format_compact(cstr);
                }
                sc.name += suffix;
                sc.out_dir = "out/" + sc.name;
                out.push_back(std::move(sc));
            }
    return out;
}

} // namespace klab
