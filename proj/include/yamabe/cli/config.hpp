#pragma once

#include "json.hpp"

#include "yamabe/symfun/symmetric_function.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace yamabe::cli {

using nlohmann::json;

inline constexpr const char* kFormatVersion = "yamabe-output 1";

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FunctionConfig {
    std::string kind = "sigma_root";
    int n = 0;
    int k = 0;
    int l = 0;

    symfun::SymFuncSpec make() const;
};

struct CheckConfig {
    int samples = 1000;
    int ball_directions = 1000;
    std::vector<double> ball_t{0.0, 0.25, 0.5, 0.9, 0.99};
    int guan_samples = 10000;
    double guan_beta = 0.2;
};

struct Example1Config {
    double c = 0.0;
    std::optional<double> d;
    double ddot_growth_threshold = 10.0;
};

struct Tolerances {
    double newton_tol = 1e-10;
    int max_iterations = 50;
    int max_halvings = 50;
    double residual_tol = 1e-7;
    double boundary_tol = 1e-6;
    double drift_tol = 1e-8;
    double evenness_tol = 1e-10;
};

struct SolveConfig {
    /// A number, or the string "example1" for the half length T_{d_c}.
    json half_length;
    std::optional<double> c;
    std::optional<std::pair<double, double>> phi;
    json psi;
    std::optional<json> subsolution;
    std::optional<json> init;
    std::vector<double> t_schedule;
    double t_max = 0.999;
    double uniformity_factor = 2.0;
    bool check_jacobian = true;
    int max_substep_depth = 6;
};

struct RunConfig {
    FunctionConfig function;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int grid_size = 401;
    CheckConfig check;
    Example1Config example1;
    Tolerances tolerances;
    std::optional<SolveConfig> solve;
};

/// Validates and fills defaults. Unknown keys anywhere raise ConfigError.
RunConfig parse_config(const json& doc);
RunConfig load_config(const std::string& path);

/// The resolved configuration, defaults included, as embedded in outputs.
json to_json(const RunConfig& cfg);

} // namespace yamabe::cli
