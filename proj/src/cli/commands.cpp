#include "yamabe/cli/commands.hpp"

#include "CLI11.hpp"

#include "yamabe/cli/families.hpp"
#include "yamabe/cli/output.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/example1/example1.hpp"
#include "yamabe/solver/continuation.hpp"
#include "yamabe/symfun/structure.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <iostream>

namespace yamabe::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json number(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

json check_json(const std::string& name, bool passed, double measured, double threshold,
                const std::string& detail = {}) {
    json j{{"name", name},
           {"status", passed ? "pass" : "fail"},
           {"measured", number(measured)},
           {"threshold", number(threshold)}};
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

bool all_pass(const json& checks) {
    for (const auto& c : checks)
        if (c.at("status") != "pass") return false;
    return true;
}

void say(const CommandContext& ctx, const std::string& msg) {
    if (ctx.log) *ctx.log << msg << '\n';
}

} // namespace

int cmd_check(const CommandContext& ctx) {
    const auto& cfg = ctx.config;
    const auto spec = cfg.function.make();
    json checks = json::array();
    json body;

    say(ctx, fmt::format("structure suite: {} samples", cfg.check.samples));
    try {
        const auto rep = symfun::verify_structure(spec, cfg.check.samples, cfg.seed);
        for (const auto& c : rep.checks)
            checks.push_back(check_json("structure." + c.name, c.passed, c.measured, c.threshold, c.detail));
    } catch (const std::exception& e) {
        checks.push_back(check_json("structure", false, NAN, 0.0, e.what()));
    }

    say(ctx, "type classification");
    try {
        const auto ty = symfun::classify_type(spec);
        body["type"] = {{"cone_type", ty.cone_type},
                        {"f_type", ty.f_type == symfun::GrowthType::bounded ? "bounded" : "unbounded"},
                        {"growth_ratio", number(ty.growth_ratio)}};
        checks.push_back(check_json("type.consistent", ty.consistent(), ty.growth_ratio, 2.0,
                                    "closed-form type agrees with the numerical probes"));
    } catch (const std::exception& e) {
        checks.push_back(check_json("type.consistent", false, NAN, 2.0, e.what()));
    }

    say(ctx, fmt::format("ball suite: {} directions", cfg.check.ball_directions));
    try {
        const auto cases = symfun::verify_ball_inclusion(spec, cfg.check.ball_t, cfg.check.ball_directions, cfg.seed);
        for (const auto& c : cases)
            checks.push_back(check_json(fmt::format("ball.t={}", format_number(c.t)), c.passed(), c.corner_value,
                                        c.bound,
                                        fmt::format("radius {}, outside {}, below bound {}", format_number(c.radius),
                                                    c.outside, c.below_bound)));
    } catch (const std::exception& e) {
        checks.push_back(check_json("ball", false, NAN, 0.0, e.what()));
    }

    say(ctx, fmt::format("normal-gap suite: {} samples", cfg.check.guan_samples));
    try {
        const auto g = symfun::guan_gap_suite(spec, cfg.check.guan_samples, cfg.check.guan_beta, cfg.seed);
        body["guan"] = {{"samples", g.samples},
                        {"attempts", g.attempts},
                        {"beta", g.beta},
                        {"min_eps", number(g.min_eps)},
                        {"max_eps", number(g.max_eps)}};
        checks.push_back(check_json("guan.min_eps", g.passed(), g.min_eps, 0.0, "smallest gap over separated samples"));
    } catch (const std::exception& e) {
        checks.push_back(check_json("guan.min_eps", false, NAN, 0.0, e.what()));
    }

    const bool passed = all_pass(checks);
    body["function"] = spec.name();
    body["passed"] = passed;
    body["checks"] = checks;
    write_file(fs::path(cfg.output_dir) / "check_report.json", report_json("check", to_json(cfg), body));
    for (const auto& c : checks)
        if (c.at("status") != "pass") std::cerr << "check failed: " << c.at("name").get<std::string>() << '\n';
    return passed ? kPass : kFailure;
}

int cmd_example1(const CommandContext& ctx) {
    const auto& cfg = ctx.config;
    const auto& f = cfg.function;
    if (f.kind != "sigma_root") throw ConfigError("example1: function.kind must be sigma_root");
    if (f.k < 2 || f.k > f.n) throw ConfigError("example1: needs 2 <= k <= n");
    if (f.n < 3) throw ConfigError("example1: needs n >= 3");

    const auto params = cfg.example1.d ? example1::ExampleParams::from_pair(f.n, f.k, cfg.example1.c, *cfg.example1.d)
                                       : example1::ExampleParams::from_c(f.n, f.k, cfg.example1.c);
    say(ctx, fmt::format("d = {}, solving on {} nodes", format_number(params.d()), cfg.grid_size));
    const auto sol = example1::solve_profile(params, cfg.grid_size);
    example1::VerifyOptions opts;
    opts.residual_tol = cfg.tolerances.residual_tol;
    opts.boundary_tol = cfg.tolerances.boundary_tol;
    opts.drift_tol = cfg.tolerances.drift_tol;
    opts.evenness_tol = cfg.tolerances.evenness_tol;
    opts.growth_threshold = cfg.example1.ddot_growth_threshold;
    const auto rep = example1::verify_example(sol, opts);

    const json config = to_json(cfg);
    const std::vector<std::pair<std::string, std::string>> extra{
        {"n", std::to_string(params.n())},
        {"k", std::to_string(params.k())},
        {"c", format_number(params.c())},
        {"d", format_number(params.d())},
        {"level", format_number(params.level())},
        {"half_length", format_number(sol.half_length)},
        {"columns", "du and d2u are the integrator's nodal values; the end rows carry the limits +-1 and inf"},
    };
    const auto& p = sol.profile;
    write_file(fs::path(cfg.output_dir) / "example1_profile.csv",
               profile_csv(csv_preamble("example1 profile", config, extra), p.grid(), p.u(), sol.du, sol.d2u,
                           rep.residual));

    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back(check_json(c.name, c.passed, c.measured, c.threshold, c.detail));
    json ddot = json::array();
    for (std::size_t i = 0; i < rep.ddot_deltas.size(); ++i)
        ddot.push_back({{"delta", rep.ddot_deltas[i]}, {"left", rep.ddot_left[i]}, {"right", rep.ddot_right[i]}});
    json body{{"params",
               {{"n", params.n()},
                {"k", params.k()},
                {"c", params.c()},
                {"d", params.d()},
                {"level", params.level()},
                {"half_length", sol.half_length},
                {"rhs_coefficient", params.rhs_coefficient()}}},
              {"passed", rep.all_passed()},
              {"checks", checks},
              {"ddot", ddot},
              {"stencil_core_residual", number(rep.stencil_core_residual)},
              {"max_first_integral_drift", sol.max_first_integral_drift},
              {"files", {"example1_profile.csv"}}};
    write_file(fs::path(cfg.output_dir) / "example1_report.json", report_json("example1", config, body));
    for (const auto& c : rep.checks)
        if (!c.passed) std::cerr << "example1 check failed: " << c.name << '\n';
    return rep.all_passed() ? kPass : kFailure;
}

int cmd_solve(const CommandContext& ctx) {
    const auto& cfg = ctx.config;
    if (!cfg.solve) throw ConfigError("solve: missing 'solve' section");
    const auto& s = *cfg.solve;

    FamilyContext fam{cfg.function.make(), s.c, 0.0, cfg.grid_size};
    if (s.half_length.is_number()) {
        fam.half_length = s.half_length.get<double>();
    } else {
        if (!s.c) throw ConfigError("solve.half_length = \"example1\" needs solve.c");
        const auto& f = fam.function;
        if (f.kind() != symfun::FunctionKind::sigma_root || f.k() < 2)
            throw ConfigError("solve.half_length = \"example1\" needs sigma_root with 2 <= k <= n");
        fam.half_length = example1::half_length(example1::ExampleParams::from_c(f.n(), f.k(), *s.c));
    }

    std::optional<geometry::RadialProfile> sub;
    if (s.subsolution) sub = sample_profile(*s.subsolution, fam);
    std::optional<geometry::RadialProfile> init;
    if (s.init) init = sample_profile(*s.init, fam);

    double phi_l = 0.0, phi_r = 0.0;
    if (s.phi) {
        std::tie(phi_l, phi_r) = *s.phi;
    } else if (sub) {
        phi_l = sub->u().front();
        phi_r = sub->u().back();
    } else if (s.c) {
        phi_l = phi_r = *s.c;
    } else {
        throw ConfigError("solve: boundary data undetermined; give solve.phi, solve.subsolution or solve.c");
    }

    const solver::DirichletProblem problem(geometry::CylinderGeometry(fam.function.n(), fam.half_length),
                                           fam.function, make_psi(s.psi, fam, s.subsolution), phi_l, phi_r, sub);
    const json config = to_json(cfg);
    const fs::path out(cfg.output_dir);
    json body;
    json checks = json::array();
    body["files"] = json::array();

    if (sub) {
        const auto sr = solver::check_subsolution(problem);
        json viol = json::array();
        for (auto i : sr.cone_violations) viol.push_back(i);
        body["subsolution"] = {{"passed", sr.passed},
                               {"min_margin", number(sr.min_margin)},
                               {"boundary_error", sr.boundary_error},
                               {"cone_violations", viol},
                               {"min_cone_margin", number(sr.min_cone_margin)}};
        checks.push_back(check_json("subsolution", sr.passed, sr.min_margin, -1e-10,
                                    fmt::format("{} cone violations, boundary error {}", sr.cone_violations.size(),
                                                format_number(sr.boundary_error))));
        if (!sr.passed) {
            body["passed"] = false;
            body["checks"] = checks;
            write_file(out / "solve_report.json", report_json("solve", config, body));
            std::cerr << "subsolution check failed; no solve attempted\n";
            return kFailure;
        }
    }

    solver::ContinuationOptions opts;
    opts.newton.tol = cfg.tolerances.newton_tol;
    opts.newton.max_iterations = cfg.tolerances.max_iterations;
    opts.newton.max_halvings = cfg.tolerances.max_halvings;
    opts.t_max = s.t_max;
    opts.uniformity_factor = s.uniformity_factor;
    opts.check_jacobian = s.check_jacobian;
    opts.max_substep_depth = s.max_substep_depth;

    solver::ContinuationReport rep;
    std::optional<double> failed_t;
    std::string failure;
    say(ctx, fmt::format("continuation over {} values of t on {} nodes", s.t_schedule.size(), cfg.grid_size));
    try {
        rep = solver::continuation_run(problem, s.t_schedule, opts, init);
    } catch (const solver::ContinuationError& e) {
        rep = e.partial();
        failed_t = e.failed_t();
        failure = e.what();
    }

    std::vector<MonitorRow> rows;
    json states = json::array();
    double min_above = std::numeric_limits<double>::infinity();
    double worst_jac = 0.0;
    for (std::size_t i = 0; i < rep.states.size(); ++i) {
        const auto& st = rep.states[i];
        say(ctx, fmt::format("t = {}: {} Newton steps, residual {}", format_number(st.t), st.newton_iterations,
                             format_number(st.residual_norm)));
        rows.push_back({st.t, st.monitors.sup_u, st.monitors.sup_du, st.monitors.sup_d2u, st.residual_norm,
                        st.cone_margin, st.newton_iterations});
        const auto res = solver::residual(problem, st.t, st.profile);
        const std::string name = fmt::format("solve_profile_{:03d}.csv", i);
        const auto& p = st.profile;
        write_file(out / name, profile_csv(csv_preamble("solve profile", config, {{"t", format_number(st.t)}}),
                                           p.grid(), p.u(), p.du(), p.d2u(), res));
        body["files"].push_back(name);
        if (sub)
            for (std::size_t j = 0; j < p.size(); ++j) min_above = std::min(min_above, p.u()[j] - sub->u()[j]);
        if (std::isfinite(st.jacobian_check)) worst_jac = std::max(worst_jac, st.jacobian_check);
        json inc = json::array();
        for (double d : st.increments) inc.push_back(d);
        states.push_back({{"t", st.t},
                          {"file", name},
                          {"residual_norm", st.residual_norm},
                          {"sup_u", st.monitors.sup_u},
                          {"sup_du", st.monitors.sup_du},
                          {"sup_d2u", st.monitors.sup_d2u},
                          {"cone_margin", st.cone_margin},
                          {"newton_iterations", st.newton_iterations},
                          {"substeps", st.substeps},
                          {"increments", inc},
                          {"jacobian_check", number(st.jacobian_check)},
                          {"sup_d2u_times_1_minus_t", st.monitors.sup_d2u * (1.0 - st.t)}});
    }
    write_file(out / "solve_monitors.csv", monitors_csv(csv_preamble("solve monitors", config), rows));
    body["files"].push_back("solve_monitors.csv");

    const bool complete = !failed_t;
    checks.push_back(check_json("convergence", complete, double(rep.states.size()), double(s.t_schedule.size()),
                                complete ? "all scheduled t converged" : failure));
    checks.push_back(check_json("uniformity", rep.uniform,
                                std::max({rep.ratio_u, rep.ratio_du, rep.ratio_d2u}), s.uniformity_factor,
                                "max over monitors of max/min across the schedule"));
    if (sub && !rep.states.empty())
        checks.push_back(check_json("above_subsolution", min_above >= -1e-8, min_above, -1e-8, "min over t, x of u_t - u_sub"));
    if (s.check_jacobian && !rep.states.empty())
        checks.push_back(check_json("jacobian_consistency", worst_jac <= 1e-6, worst_jac, 1e-6,
                                    "analytic vs central-difference Jacobian"));

    body["states"] = states;
    body["summary"] = {{"complete", complete},
                       {"ratio_u", number(rep.ratio_u)},
                       {"ratio_du", number(rep.ratio_du)},
                       {"ratio_d2u", number(rep.ratio_d2u)},
                       {"uniform", rep.uniform}};
    if (failed_t) {
        body["summary"]["failed_t"] = *failed_t;
        body["summary"]["failure"] = failure;
    }
    body["passed"] = all_pass(checks);
    body["checks"] = checks;
    write_file(out / "solve_report.json", report_json("solve", config, body));
    if (failed_t) {
        std::cerr << "continuation stopped at t = " << format_number(*failed_t) << ": " << failure << '\n';
        return kPartial;
    }
    return kPass;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Numerical experiments for the fully nonlinear Yamabe problem on the cylinder"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool verbose = false;
    for (const char* name : {"check", "example1", "solve"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
        sub->add_option("--seed", seed, "Random seed (overrides seed)");
        sub->add_flag("--verbose", verbose, "Progress messages on stderr");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigError;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    const auto* sub = app.get_subcommands().front();

    try {
        CommandContext ctx;
        ctx.config = load_config(config_path);
        if (sub->count("--out")) ctx.config.output_dir = out_dir;
        if (sub->count("--seed")) ctx.config.seed = seed;
        if (verbose) ctx.log = &std::cerr;
        if (command == "check") return cmd_check(ctx);
        if (command == "example1") return cmd_example1(ctx);
        return cmd_solve(ctx);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ArgumentError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}

} // namespace yamabe::cli
