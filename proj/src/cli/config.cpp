#include "yamabe/cli/config.hpp"

#include "yamabe/cli/families.hpp"
#include "yamabe/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace yamabe::cli {

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items())
        if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double get_number(const json& obj, const std::string& where, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

std::vector<double> get_list(const json& obj, const std::string& where, const char* key,
                             std::vector<double> fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.empty()) throw ConfigError(where + "." + key + ": expected a non-empty array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(where + "." + key + ": entries must be numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

void positive(double v, const std::string& what) {
    if (!(v > 0.0)) throw ConfigError(what + ": must be positive");
}

FunctionConfig parse_function(const json& j) {
    only_keys(j, "function", {"kind", "n", "k", "l"});
    FunctionConfig f;
    if (j.contains("kind")) {
        if (!j.at("kind").is_string()) throw ConfigError("function.kind: expected a string");
        f.kind = j.at("kind").get<std::string>();
    }
    f.n = get_int(j, "function", "n", 0);
    f.k = get_int(j, "function", "k", f.kind == "sigma1_squared" ? 1 : 0);
    f.l = get_int(j, "function", "l", 0);
    try {
        (void)f.make();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("function: ") + e.what());
    }
    return f;
}

CheckConfig parse_check(const json& j) {
    only_keys(j, "check", {"samples", "ball_directions", "ball_t", "guan_samples", "guan_beta"});
    CheckConfig c;
    c.samples = get_int(j, "check", "samples", c.samples);
    c.ball_directions = get_int(j, "check", "ball_directions", c.ball_directions);
    c.ball_t = get_list(j, "check", "ball_t", c.ball_t);
    c.guan_samples = get_int(j, "check", "guan_samples", c.guan_samples);
    c.guan_beta = get_number(j, "check", "guan_beta", c.guan_beta);
    if (c.samples < 1 || c.ball_directions < 1 || c.guan_samples < 1)
        throw ConfigError("check: sample counts must be at least 1");
    for (double t : c.ball_t)
        if (!(t >= 0.0 && t < 1.0)) throw ConfigError("check.ball_t: entries must lie in [0, 1)");
    positive(c.guan_beta, "check.guan_beta");
    return c;
}

Example1Config parse_example1(const json& j) {
    only_keys(j, "example1", {"c", "d", "ddot_growth_threshold"});
    Example1Config e;
    e.c = get_number(j, "example1", "c", e.c);
    if (j.contains("d")) e.d = get_number(j, "example1", "d", 0.0);
    e.ddot_growth_threshold = get_number(j, "example1", "ddot_growth_threshold", e.ddot_growth_threshold);
    positive(e.ddot_growth_threshold, "example1.ddot_growth_threshold");
    return e;
}

Tolerances parse_tolerances(const json& j) {
    only_keys(j, "tolerances", {"newton_tol", "max_iterations", "max_halvings", "residual_tol", "boundary_tol",
                                "drift_tol", "evenness_tol"});
    Tolerances t;
    t.newton_tol = get_number(j, "tolerances", "newton_tol", t.newton_tol);
    t.max_iterations = get_int(j, "tolerances", "max_iterations", t.max_iterations);
    t.max_halvings = get_int(j, "tolerances", "max_halvings", t.max_halvings);
    t.residual_tol = get_number(j, "tolerances", "residual_tol", t.residual_tol);
    t.boundary_tol = get_number(j, "tolerances", "boundary_tol", t.boundary_tol);
    t.drift_tol = get_number(j, "tolerances", "drift_tol", t.drift_tol);
    t.evenness_tol = get_number(j, "tolerances", "evenness_tol", t.evenness_tol);
    for (double v : {t.newton_tol, t.residual_tol, t.boundary_tol, t.drift_tol, t.evenness_tol})
        positive(v, "tolerances");
    if (t.max_iterations < 1 || t.max_halvings < 0) throw ConfigError("tolerances: invalid iteration limits");
    return t;
}

SolveConfig parse_solve(const json& j) {
    only_keys(j, "solve", {"half_length", "c", "phi", "psi", "subsolution", "init", "t_schedule", "t_max",
                           "uniformity_factor", "check_jacobian", "max_substep_depth"});
    SolveConfig s;
    if (!j.contains("half_length")) throw ConfigError("solve.half_length: required");
    s.half_length = j.at("half_length");
    if (s.half_length.is_number()) {
        positive(s.half_length.get<double>(), "solve.half_length");
    } else if (!(s.half_length.is_string() && s.half_length.get<std::string>() == "example1")) {
        throw ConfigError("solve.half_length: expected a positive number or \"example1\"");
    }
    if (j.contains("c")) s.c = get_number(j, "solve", "c", 0.0);
    if (j.contains("phi")) {
        const auto v = get_list(j, "solve", "phi", {});
        if (v.size() != 2) throw ConfigError("solve.phi: expected [left, right]");
        s.phi = std::make_pair(v[0], v[1]);
    }
    if (!j.contains("psi")) throw ConfigError("solve.psi: required");
    s.psi = j.at("psi");
    validate_psi_family(s.psi, "solve.psi");
    if (j.contains("subsolution")) {
        s.subsolution = j.at("subsolution");
        validate_profile_family(*s.subsolution, "solve.subsolution");
    }
    if (j.contains("init")) {
        s.init = j.at("init");
        validate_profile_family(*s.init, "solve.init");
    }
    s.t_max = get_number(j, "solve", "t_max", s.t_max);
    if (!(s.t_max > 0.0 && s.t_max < 1.0)) throw ConfigError("solve.t_max: must lie in (0, 1)");
    s.t_schedule = get_list(j, "solve", "t_schedule", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.975, 0.99});
    for (std::size_t i = 0; i < s.t_schedule.size(); ++i) {
        if (!(s.t_schedule[i] >= 0.0 && s.t_schedule[i] <= s.t_max))
            throw ConfigError("solve.t_schedule: entries must lie in [0, t_max]");
        if (i > 0 && !(s.t_schedule[i] > s.t_schedule[i - 1]))
            throw ConfigError("solve.t_schedule: must be strictly ascending");
    }
    s.uniformity_factor = get_number(j, "solve", "uniformity_factor", s.uniformity_factor);
    if (!(s.uniformity_factor >= 1.0)) throw ConfigError("solve.uniformity_factor: must be at least 1");
    if (j.contains("check_jacobian")) {
        if (!j.at("check_jacobian").is_boolean()) throw ConfigError("solve.check_jacobian: expected a boolean");
        s.check_jacobian = j.at("check_jacobian").get<bool>();
    }
    s.max_substep_depth = get_int(j, "solve", "max_substep_depth", s.max_substep_depth);
    if (s.max_substep_depth < 0) throw ConfigError("solve.max_substep_depth: must be non-negative");
    if (!s.subsolution && !s.init) throw ConfigError("solve: need a subsolution or an init profile");
    return s;
}

} // namespace

symfun::SymFuncSpec FunctionConfig::make() const {
    if (kind == "sigma_root") return symfun::SymFuncSpec::sigma_root(n, k);
    if (kind == "quotient") return symfun::SymFuncSpec::quotient(n, k, l);
    if (kind == "sigma1_squared") return symfun::SymFuncSpec::sigma1_squared(n);
    throw ConfigError("function.kind: unknown kind '" + kind + "'");
}

RunConfig parse_config(const json& doc) {
    only_keys(doc, "config", {"function", "seed", "output_dir", "grid_size", "check", "example1", "solve",
                              "tolerances"});
    RunConfig cfg;
    if (!doc.contains("function")) throw ConfigError("config.function: required");
    cfg.function = parse_function(doc.at("function"));
    if (doc.contains("seed")) {
        const auto& s = doc.at("seed");
        if (!s.is_number_unsigned()) throw ConfigError("config.seed: expected a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) throw ConfigError("config.output_dir: expected a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }
    cfg.grid_size = get_int(doc, "config", "grid_size", cfg.grid_size);
    if (cfg.grid_size < 5) throw ConfigError("config.grid_size: need at least 5 nodes");
    if (doc.contains("check")) cfg.check = parse_check(doc.at("check"));
    if (doc.contains("example1")) cfg.example1 = parse_example1(doc.at("example1"));
    if (doc.contains("tolerances")) cfg.tolerances = parse_tolerances(doc.at("tolerances"));
    if (doc.contains("solve")) cfg.solve = parse_solve(doc.at("solve"));
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
    json j;
    j["function"] = {{"kind", cfg.function.kind}, {"n", cfg.function.n}, {"k", cfg.function.k}};
    if (cfg.function.kind == "quotient") j["function"]["l"] = cfg.function.l;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    j["grid_size"] = cfg.grid_size;
    j["check"] = {{"samples", cfg.check.samples},
                  {"ball_directions", cfg.check.ball_directions},
                  {"ball_t", cfg.check.ball_t},
                  {"guan_samples", cfg.check.guan_samples},
                  {"guan_beta", cfg.check.guan_beta}};
    j["example1"] = {{"c", cfg.example1.c}, {"ddot_growth_threshold", cfg.example1.ddot_growth_threshold}};
    if (cfg.example1.d) j["example1"]["d"] = *cfg.example1.d;
    const auto& t = cfg.tolerances;
    j["tolerances"] = {{"newton_tol", t.newton_tol},     {"max_iterations", t.max_iterations},
                       {"max_halvings", t.max_halvings}, {"residual_tol", t.residual_tol},
                       {"boundary_tol", t.boundary_tol}, {"drift_tol", t.drift_tol},
                       {"evenness_tol", t.evenness_tol}};
    if (cfg.solve) {
        const auto& s = *cfg.solve;
        json sj;
        sj["half_length"] = s.half_length;
        if (s.c) sj["c"] = *s.c;
        if (s.phi) sj["phi"] = {s.phi->first, s.phi->second};
        sj["psi"] = s.psi;
        if (s.subsolution) sj["subsolution"] = *s.subsolution;
        if (s.init) sj["init"] = *s.init;
        sj["t_schedule"] = s.t_schedule;
        sj["t_max"] = s.t_max;
        sj["uniformity_factor"] = s.uniformity_factor;
        sj["check_jacobian"] = s.check_jacobian;
        sj["max_substep_depth"] = s.max_substep_depth;
        j["solve"] = std::move(sj);
    }
    return j;
}

} // namespace yamabe::cli
