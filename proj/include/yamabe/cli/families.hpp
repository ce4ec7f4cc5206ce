#pragma once

#include "json.hpp"

#include "yamabe/geometry/cylinder.hpp"
#include "yamabe/solver/problem.hpp"

#include <functional>
#include <optional>
#include <string>

namespace yamabe::cli {

/// Named built-in profile families, given in the config as
/// {"family": name, ...parameters}:
///   constant    value
///   quadratic   a x^2 + b x + c
///   cosh        a cosh(x / w) + b x + c
///   polysin     a x^2 + b x + c + amp sin(freq x)
///   example1    the example profile for (n, k, solve.c) on [-T, T]
void validate_profile_family(const nlohmann::json& spec, const std::string& where);

/// Right-hand side families:
///   scaled_subsolution  theta f(lambda(W[subsolution]))
///   example1            [(n / (k 2^k)) C(n-1, k-1)]^{1/k} e^{-2z}
///   constant            value
///   exponential         a e^{-b z}, b >= 0
///   manufactured        f_t(lambda(W[profile])) for a nested profile family
void validate_psi_family(const nlohmann::json& spec, const std::string& where);

/// A profile family with closed-form derivatives (every family but example1).
struct AnalyticProfile {
    std::string name;
    std::function<double(double)> u;
    std::function<double(double)> du;
    std::function<double(double)> d2u;
};

std::optional<AnalyticProfile> analytic_profile(const nlohmann::json& spec);

struct FamilyContext {
    symfun::SymFuncSpec function;
    std::optional<double> c;  ///< solve.c, needed by the example1 families
    double half_length = 0.0;
    int grid_size = 0;
};

geometry::RadialProfile sample_profile(const nlohmann::json& spec, const FamilyContext& ctx);

solver::RightHandSide make_psi(const nlohmann::json& spec, const FamilyContext& ctx,
                               const std::optional<nlohmann::json>& subsolution);

} // namespace yamabe::cli
