#include "yamabe/cli/families.hpp"

#include "yamabe/cli/config.hpp"
#include "yamabe/example1/example1.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace yamabe::cli {

namespace {

using nlohmann::json;

struct FamilyShape {
    std::set<std::string> required;
    std::set<std::string> optional;
};

const std::map<std::string, FamilyShape>& profile_shapes() {
    static const std::map<std::string, FamilyShape> shapes{
        {"constant", {{"value"}, {}}},
        {"quadratic", {{}, {"a", "b", "c"}}},
        {"cosh", {{"a"}, {"w", "b", "c"}}},
        {"polysin", {{}, {"a", "b", "c", "amp", "freq"}}},
        {"example1", {{}, {}}},
    };
    return shapes;
}

const std::map<std::string, FamilyShape>& psi_shapes() {
    static const std::map<std::string, FamilyShape> shapes{
        {"scaled_subsolution", {{"theta"}, {}}},
        {"example1", {{}, {}}},
        {"constant", {{"value"}, {}}},
        {"exponential", {{"a"}, {"b"}}},
        {"manufactured", {{"profile"}, {}}},
    };
    return shapes;
}

std::string family_of(const json& spec, const std::string& where) {
    if (!spec.is_object()) throw ConfigError(where + ": expected an object");
    if (!spec.contains("family") || !spec.at("family").is_string())
        throw ConfigError(where + ".family: required string");
    return spec.at("family").get<std::string>();
}

void check_shape(const json& spec, const std::string& where, const FamilyShape& shape,
                 const std::set<std::string>& non_numeric = {}) {
    for (const auto& [key, value] : spec.items()) {
        if (key == "family") continue;
        if (!shape.required.count(key) && !shape.optional.count(key))
            throw ConfigError(where + ": unknown key '" + key + "' for family '" + spec.at("family").get<std::string>() + "'");
        if (!non_numeric.count(key) && !value.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    }
    for (const auto& key : shape.required)
        if (!spec.contains(key)) throw ConfigError(where + "." + key + ": required");
}

double param(const json& spec, const char* key, double fallback) {
    return spec.contains(key) ? spec.at(key).get<double>() : fallback;
}

} // namespace

void validate_profile_family(const json& spec, const std::string& where) {
    const auto family = family_of(spec, where);
    const auto it = profile_shapes().find(family);
    if (it == profile_shapes().end()) throw ConfigError(where + ".family: unknown profile family '" + family + "'");
    check_shape(spec, where, it->second);
    if (family == "cosh" && !(param(spec, "w", 1.0) > 0.0)) throw ConfigError(where + ".w: must be positive");
}

void validate_psi_family(const json& spec, const std::string& where) {
    const auto family = family_of(spec, where);
    const auto it = psi_shapes().find(family);
    if (it == psi_shapes().end()) throw ConfigError(where + ".family: unknown psi family '" + family + "'");
    check_shape(spec, where, it->second, {"profile"});
    if (family == "scaled_subsolution" && !(param(spec, "theta", 0.0) > 0.0))
        throw ConfigError(where + ".theta: must be positive");
    if (family == "constant" && !(param(spec, "value", 0.0) > 0.0))
        throw ConfigError(where + ".value: must be positive");
    if (family == "exponential") {
        if (!(param(spec, "a", 0.0) > 0.0)) throw ConfigError(where + ".a: must be positive");
        if (!(param(spec, "b", 0.0) >= 0.0)) throw ConfigError(where + ".b: must be non-negative (psi_z <= 0)");
    }
    if (family == "manufactured") {
        validate_profile_family(spec.at("profile"), where + ".profile");
        if (spec.at("profile").at("family") == "example1")
            throw ConfigError(where + ".profile: needs a family with closed-form derivatives");
    }
}

std::optional<AnalyticProfile> analytic_profile(const json& spec) {
    const auto family = spec.at("family").get<std::string>();
    const double a = param(spec, "a", 0.0), b = param(spec, "b", 0.0), c = param(spec, "c", 0.0);
    if (family == "constant") {
        const double v = spec.at("value").get<double>();
        return AnalyticProfile{family, [v](double) { return v; }, [](double) { return 0.0; },
                               [](double) { return 0.0; }};
    }
    if (family == "quadratic")
        return AnalyticProfile{family, [=](double x) { return (a * x + b) * x + c; },
                               [=](double x) { return 2.0 * a * x + b; }, [=](double) { return 2.0 * a; }};
    if (family == "cosh") {
        const double w = param(spec, "w", 1.0);
        return AnalyticProfile{family, [=](double x) { return a * std::cosh(x / w) + b * x + c; },
                               [=](double x) { return a / w * std::sinh(x / w) + b; },
                               [=](double x) { return a / (w * w) * std::cosh(x / w); }};
    }
    if (family == "polysin") {
        const double amp = param(spec, "amp", 0.0), f = param(spec, "freq", 1.0);
        return AnalyticProfile{family, [=](double x) { return (a * x + b) * x + c + amp * std::sin(f * x); },
                               [=](double x) { return 2.0 * a * x + b + amp * f * std::cos(f * x); },
                               [=](double x) { return 2.0 * a - amp * f * f * std::sin(f * x); }};
    }
    return std::nullopt;
}

geometry::RadialProfile sample_profile(const json& spec, const FamilyContext& ctx) {
    if (auto p = analytic_profile(spec))
        return geometry::RadialProfile::sample(geometry::uniform_grid(ctx.half_length, ctx.grid_size), p->u);
    // example1
    if (!ctx.c) throw ConfigError("profile family example1 needs solve.c");
    const auto& f = ctx.function;
    if (f.kind() != symfun::FunctionKind::sigma_root) throw ConfigError("profile family example1 needs sigma_root");
    const auto params = example1::ExampleParams::from_c(f.n(), f.k(), *ctx.c);
    const double T = example1::half_length(params);
    if (std::abs(T - ctx.half_length) > 1e-12 * T)
        throw ConfigError("profile family example1 needs solve.half_length = \"example1\"");
    return example1::solve_profile(params, ctx.grid_size).profile;
}

solver::RightHandSide make_psi(const json& spec, const FamilyContext& ctx, const std::optional<json>& subsolution) {
    const auto family = spec.at("family").get<std::string>();
    const auto fn = ctx.function;
    const int n = fn.n();
    if (family == "constant") {
        const double v = spec.at("value").get<double>();
        return {family, [v](double, double, double) { return v; }, [](double, double, double) { return 0.0; }};
    }
    if (family == "exponential") {
        const double a = spec.at("a").get<double>(), b = param(spec, "b", 0.0);
        return {family, [=](double, double z, double) { return a * std::exp(-b * z); },
                [=](double, double z, double) { return -b * a * std::exp(-b * z); }};
    }
    if (family == "example1") {
        if (fn.kind() != symfun::FunctionKind::sigma_root || fn.k() < 2)
            throw ConfigError("psi family example1 needs sigma_root with 2 <= k <= n");
        const double kappa = example1::ExampleParams::from_c(n, fn.k(), ctx.c.value_or(0.0)).rhs_coefficient();
        return {family, [=](double, double z, double) { return kappa * std::exp(-2.0 * z); },
                [=](double, double z, double) { return -2.0 * kappa * std::exp(-2.0 * z); }};
    }
    if (family == "scaled_subsolution") {
        if (!subsolution) throw ConfigError("psi family scaled_subsolution needs solve.subsolution");
        const auto sub = analytic_profile(*subsolution);
        if (!sub) throw ConfigError("psi family scaled_subsolution needs a subsolution with closed-form derivatives");
        const double theta = spec.at("theta").get<double>();
        auto value = [=](double x, double, double) {
            const auto lam = geometry::radial_eigenvalues(n, sub->du(x), sub->d2u(x));
            if (!symfun::cone_member(fn, lam)) return std::numeric_limits<double>::quiet_NaN();
            return theta * symfun::f_eval(fn, lam);
        };
        return {family, value, [](double, double, double) { return 0.0; }};
    }
    // manufactured
    const auto star = analytic_profile(spec.at("profile"));
    auto value = [=](double x, double, double t) {
        const auto lam = geometry::radial_eigenvalues(n, star->du(x), star->d2u(x));
        if (!symfun::gamma_t_member(fn, t, lam)) return std::numeric_limits<double>::quiet_NaN();
        return symfun::ft_eval(fn, t, lam);
    };
    return {family, value, [](double, double, double) { return 0.0; }};
}

} // namespace yamabe::cli
