#include "doctest.h"

#include "yamabe/cli/config.hpp"
#include "yamabe/cli/output.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

using namespace yamabe::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_root() { return fs::temp_directory_path() / ("yamabe_test_" + std::to_string(::getpid())); }

struct ScratchCleanup {
    ~ScratchCleanup() {
        std::error_code ec;
        fs::remove_all(scratch_root(), ec);
    }
} const cleanup;

fs::path scratch(const std::string& name) {
    const auto dir = scratch_root() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void put(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

int run(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string("'") + YAMABE_BINARY + "' " + args + " > '" + log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string first_data_line(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') return line;
    return {};
}

const char* kManufactured = R"({
  "function": {"kind": "sigma_root", "n": 4, "k": 2},
  "grid_size": 61,
  "solve": {
    "half_length": 0.8,
    "phi": [0.0, 0.0],
    "init": {"family": "quadratic", "a": 0.5, "b": 0.0, "c": -0.32},
    "psi": {"family": "manufactured", "profile": {"family": "quadratic", "a": 0.5, "b": 0.0, "c": -0.32}},
    "t_schedule": [0.0, 0.5, 0.9]
  }
})";

} // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("config parsing fills defaults and rejects bad input") {
    const auto cfg = parse_config(json::parse(R"({"function": {"kind": "sigma_root", "n": 4, "k": 2}})"));
    CHECK(cfg.seed == 1);
    CHECK(cfg.grid_size == 401);
    CHECK(cfg.tolerances.newton_tol == 1e-10);
    CHECK(cfg.check.samples == 1000);
    CHECK_FALSE(cfg.solve.has_value());
    CHECK(to_json(parse_config(to_json(cfg))) == to_json(cfg));

    CHECK_THROWS_AS(parse_config(json::parse(R"({})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"function": {"kind": "sigma_root", "n": 4, "k": 5}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"function": {"kind": "sigma_root", "n": 4, "k": 2}, "colour": 1})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"function": {"kind": "quotient", "n": 4, "k": 2, "l": 2}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(
                        R"({"function": {"kind": "sigma_root", "n": 4, "k": 2},
                            "solve": {"half_length": 0.4, "psi": {"family": "constant", "value": 1}}})")),
                    ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("check command: pass, forced failure and config errors") {
    const auto dir = scratch("check");
    put(dir / "good.json", R"({"function": {"kind": "sigma_root", "n": 4, "k": 2}, "seed": 3,
        "check": {"samples": 200, "ball_directions": 100, "guan_samples": 300}})");
    CHECK(run("check '" + (dir / "good.json").string() + "' --out '" + (dir / "good").string() + "'", dir / "log") == 0);
    const auto report = json::parse(slurp(dir / "good" / "check_report.json"));
    CHECK(report.at("format") == kFormatVersion);
    CHECK(report.at("config").at("seed") == 3);
    for (const auto& c : report.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.at("status") == "pass");
        CHECK(c.contains("measured"));
        CHECK(c.contains("threshold"));
    }

    put(dir / "broken.json", R"({"function": {"kind": "sigma1_squared", "n": 4},
        "check": {"samples": 200, "ball_directions": 100, "guan_samples": 300}})");
    CHECK(run("check '" + (dir / "broken.json").string() + "' --out '" + (dir / "broken").string() + "'", dir / "log") == 1);
    const auto broken = json::parse(slurp(dir / "broken" / "check_report.json"));
    bool homogeneity_failed = false;
    for (const auto& c : broken.at("checks"))
        if (c.at("name") == "structure.f4_homogeneity") homogeneity_failed = c.at("status") == "fail";
    CHECK(homogeneity_failed);

    put(dir / "malformed.json", "{\"function\": ");
    CHECK(run("check '" + (dir / "malformed.json").string() + "'", dir / "log") == 2);
    CHECK(run("check '" + (dir / "missing.json").string() + "'", dir / "log") == 2);
    CHECK(run("frobnicate '" + (dir / "good.json").string() + "'", dir / "log") == 2);
}

TEST_CASE("example1 command") {
    const auto dir = scratch("example1");
    put(dir / "k1.json", R"({"function": {"kind": "sigma_root", "n": 4, "k": 1}})");
    CHECK(run("example1 '" + (dir / "k1.json").string() + "' --out '" + dir.string() + "'", dir / "log") == 2);

    put(dir / "k3.json", R"({"function": {"kind": "sigma_root", "n": 5, "k": 3}, "grid_size": 101,
        "example1": {"c": 0.0}})");
    CHECK(run("example1 '" + (dir / "k3.json").string() + "' --out '" + (dir / "k3").string() + "'", dir / "log") == 0);
    const auto csv = slurp(dir / "k3" / "example1_profile.csv");
    CHECK(csv.rfind("# format: yamabe-output 1", 0) == 0);
    CHECK(csv.find("# config: ") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(first_data_line(csv) == "x,u,du,d2u,residual");
    const auto report = json::parse(slurp(dir / "k3" / "example1_report.json"));
    CHECK(report.at("kind") == "example1");
}

TEST_CASE("solve command: success, determinism and missing start") {
    const auto dir = scratch("solve");
    put(dir / "m.json", kManufactured);
    const std::string out = (dir / "out").string();
    CHECK(run("solve '" + (dir / "m.json").string() + "' --out '" + out + "' --seed 9", dir / "log") == 0);
    const auto monitors = slurp(dir / "out" / "solve_monitors.csv");
    CHECK(first_data_line(monitors) == "t,sup_u,sup_du,sup_d2u,residual_norm,cone_margin,newton_iters");
    int rows = 0;
    {
        std::istringstream in(monitors);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') ++rows;
    }
    CHECK(rows == 4);  // header + one row per t
    CHECK(first_data_line(slurp(dir / "out" / "solve_profile_000.csv")) == "x,u,du,d2u,residual");
    const auto report = json::parse(slurp(dir / "out" / "solve_report.json"));
    CHECK(report.at("config").at("seed") == 9);
    CHECK(report.at("passed") == true);

    // Same config, seed and output directory: byte-identical files.
    const auto first = slurp(dir / "out" / "solve_report.json");
    const auto first_csv = slurp(dir / "out" / "solve_profile_002.csv");
    CHECK(run("solve '" + (dir / "m.json").string() + "' --out '" + out + "' --seed 9", dir / "log") == 0);
    CHECK(slurp(dir / "out" / "solve_report.json") == first);
    CHECK(slurp(dir / "out" / "solve_profile_002.csv") == first_csv);

    put(dir / "nostart.json", R"({"function": {"kind": "sigma_root", "n": 4, "k": 2},
        "solve": {"half_length": 0.4, "psi": {"family": "constant", "value": 1}}})");
    CHECK(run("solve '" + (dir / "nostart.json").string() + "' --out '" + out + "'", dir / "log") == 2);
}

TEST_CASE("solve command: failing subsolution and partial convergence") {
    const auto dir = scratch("solve_fail");
    put(dir / "sub.json", R"({"function": {"kind": "sigma_root", "n": 4, "k": 2}, "grid_size": 41,
        "solve": {"half_length": 0.4,
                  "subsolution": {"family": "quadratic", "a": 0.5, "b": 0.4, "c": 0.0},
                  "psi": {"family": "scaled_subsolution", "theta": 2.0}}})");
    CHECK(run("solve '" + (dir / "sub.json").string() + "' --out '" + (dir / "a").string() + "'", dir / "log") == 1);
    CHECK_FALSE(fs::exists(dir / "a" / "solve_monitors.csv"));

    auto partial = json::parse(kManufactured);
    partial["tolerances"] = {{"max_iterations", 1}};
    partial["solve"]["max_substep_depth"] = 0;
    partial["solve"]["init"] = {{"family", "quadratic"}, {"a", 0.5}, {"b", 0.0}, {"c", -0.32}};
    partial["solve"]["t_schedule"] = {0.0, 0.9};
    partial["solve"]["psi"] = {{"family", "constant"}, {"value", 1.0}};
    put(dir / "partial.json", partial.dump());
    CHECK(run("solve '" + (dir / "partial.json").string() + "' --out '" + (dir / "b").string() + "'", dir / "log") == 3);
    const auto report = json::parse(slurp(dir / "b" / "solve_report.json"));
    CHECK(report.at("summary").at("complete") == false);
    CHECK(report.at("summary").contains("failed_t"));
}
