// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and runtime
// budgets are fixed below; a criterion that misses either is reported as FAIL
// with the measured values and the process exits non-zero.

#include "yamabe/example1/example1.hpp"
#include "yamabe/solver/continuation.hpp"
#include "yamabe/symfun/matrix_function.hpp"
#include "yamabe/symfun/structure.hpp"

#include "oracles.hpp"

#include <Eigen/Dense>
#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace yamabe;
using geometry::CylinderGeometry;
using geometry::RadialProfile;
using symfun::SymFuncSpec;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<Outcome()> run;
};

// ---- 1 --------------------------------------------------------------------

constexpr double kTolD = 1e-10;
constexpr double kTolH = 1e-12;

Outcome closed_form() {
    const auto p = example1::ExampleParams::from_c(4, 2, 0.0);
    const double err_d = std::abs(p.d() + std::log(2.0) / 4.0);
    const double err_h = std::abs(example1::first_integral(4, 2, p.d(), 0.0) + 1.0);
    return {err_d <= kTolD && err_h <= kTolH,
            fmt::format("d_c = {:.17g}, |d_c + ln2/4| = {:.3g} (tol {:g}), |H(d_c,0) + 1| = {:.3g} (tol {:g})",
                        p.d(), err_d, kTolD, err_h, kTolH)};
}

// ---- 2 --------------------------------------------------------------------

constexpr double kTolHalfLength = 1e-6;

Outcome half_length_consistency() {
    double worst = 0.0;
    for (auto [n, k] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 3}})
        for (double c : {0.0, 1.0}) {
            const auto p = example1::ExampleParams::from_c(n, k, c);
            const double quad = example1::half_length(p);
            const double ivp = oracle::ivp_half_length(n, k, p.d(), c);
            worst = std::max(worst, std::abs(quad - ivp) / ivp);
        }
    return {worst <= kTolHalfLength,
            fmt::format("max relative |T_quad - T_ivp| over 6 cases = {:.3g} (tol {:g})", worst, kTolHalfLength)};
}

// ---- 3 --------------------------------------------------------------------

constexpr double kTolDrift = 1e-8;
constexpr double kTolBoundary = 1e-6;
constexpr double kGrowth = 10.0;

Outcome non_smoothness() {
    const auto p = example1::ExampleParams::from_c(4, 2, 0.0);
    const auto sol = example1::solve_profile(p, 401);
    const auto& u = sol.profile.u();
    double drift = 0.0, min_q = 1.0;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        drift = std::max(drift, std::abs(oracle::first_integral(4, 2, u[i], sol.du[i]) - p.level()));
        min_q = std::min(min_q, 1.0 - sol.du[i] * sol.du[i]);
    }
    const double bnd = std::max(std::abs(u.front() - p.c()), std::abs(u.back() - p.c()));

    // The profile is even, so both endpoints share the same samples.
    const double t = example1::half_length(p);
    std::vector<double> ddot;
    for (double f : {1e-2, 1e-3, 1e-4}) ddot.push_back(example1::state_near_boundary(p, f * t).d2u);
    const bool increasing = ddot[0] < ddot[1] && ddot[1] < ddot[2];
    const double ratio = ddot[2] / ddot[0];
    const bool ok = drift <= kTolDrift && min_q > 0.0 && bnd <= kTolBoundary && increasing && ratio > kGrowth;
    return {ok, fmt::format("drift {:.3g} (tol {:g}), min 1-u'^2 {:.3g}, boundary error {:.3g} (tol {:g}), "
                            "u'' at 1e-2/1e-3/1e-4 T: {:.6g}, {:.6g}, {:.6g}, last/first {:.4g} (need > {:g})",
                            drift, kTolDrift, min_q, bnd, kTolBoundary, ddot[0], ddot[1], ddot[2], ratio, kGrowth)};
}

// ---- 4, 5 -----------------------------------------------------------------

std::vector<SymFuncSpec> structural_family() {
    std::vector<SymFuncSpec> out;
    for (int n = 3; n <= 5; ++n) {
        for (int k = 1; k <= n; ++k) out.push_back(SymFuncSpec::sigma_root(n, k));
        out.push_back(SymFuncSpec::quotient(n, 2, 1));
    }
    return out;
}

Outcome structural_suite() {
    int failed = 0, total = 0;
    std::string names;
    for (const auto& spec : structural_family()) {
        const auto rep = symfun::verify_structure(spec, 1000, 20240101);
        for (const auto& c : rep.checks) {
            ++total;
            if (!c.passed) {
                ++failed;
                names += " " + spec.name() + "/" + c.name;
            }
        }
    }
    return {failed == 0, fmt::format("{} functions, {} checks, {} failed{}", structural_family().size(), total,
                                     failed, names)};
}

Outcome ball_suite() {
    const std::vector<double> ts{0.0, 0.25, 0.5, 0.9, 0.99};
    int outside = 0, below = 0, corner = 0;
    for (const auto& spec : structural_family())
        for (const auto& c : symfun::verify_ball_inclusion(spec, ts, 1000, 7)) {
            outside += c.outside;
            below += c.below_bound;
            corner += c.corner_value < c.bound;
        }
    return {outside + below + corner == 0,
            fmt::format("{} functions x 5 t x 1000 directions: {} outside Gamma_t, {} below (1-t)f(e)/2, "
                        "{} corner failures",
                        structural_family().size(), outside, below, corner)};
}

// ---- 6 --------------------------------------------------------------------

constexpr double kTolMatrix = 1e-8;

Outcome matrix_identity() {
    const auto spec = SymFuncSpec::sigma_root(4, 2);
    std::mt19937_64 rng(6);
    std::normal_distribution<double> g(0.0, 1.0);
    auto orthogonal = [&] {
        Eigen::MatrixXd a(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = g(rng);
        return Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ());
    };
    double worst_id = 0.0, worst_inv = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const auto lam = symfun::sample_cone_point(spec, rng);
        const Eigen::Vector4d d(lam[0], lam[1], lam[2], lam[3]);
        const Eigen::MatrixXd q = orthogonal();
        const Eigen::MatrixXd w = q * d.asDiagonal() * q.transpose();
        const auto r = symfun::matrix_F(spec, 1.0, w);
        const double lhs = (r.derivative.array() * (w * w.transpose()).array()).sum();
        const auto grad = symfun::f_grad(spec, lam);
        double rhs = 0.0;
        for (int i = 0; i < 4; ++i) rhs += grad[i] * lam[i] * lam[i];
        worst_id = std::max(worst_id, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
        const Eigen::MatrixXd q2 = orthogonal();
        const double v2 = symfun::matrix_F(spec, 1.0, q2 * w * q2.transpose()).value;
        worst_inv = std::max(worst_inv, std::abs(v2 - r.value) / r.value);
    }
    return {worst_id <= kTolMatrix && worst_inv <= kTolMatrix,
            fmt::format("1000 matrices: identity rel. error {:.3g}, invariance rel. error {:.3g} (tol {:g})",
                        worst_id, worst_inv, kTolMatrix)};
}

// ---- 7 --------------------------------------------------------------------

constexpr double kMinOrder = 1.9;

struct Manufactured {
    static double u(double x) { return 0.5 * x * x + 0.05 * std::sin(3.0 * x); }
    static double du(double x) { return x + 0.15 * std::cos(3.0 * x); }
    static double d2u(double x) { return 1.0 - 0.45 * std::sin(3.0 * x); }
};

Outcome manufactured_convergence() {
    const auto spec = SymFuncSpec::sigma_root(4, 2);
    const double l = 0.8;
    auto m = [spec](double x, double t) {
        return symfun::ft_eval(spec, t, geometry::radial_eigenvalues(4, Manufactured::du(x), Manufactured::d2u(x)));
    };
    solver::RightHandSide psi{"manufactured",
                              [m](double x, double z, double t) { return m(x, t) * std::exp(Manufactured::u(x) - z); },
                              [m](double x, double z, double t) { return -m(x, t) * std::exp(Manufactured::u(x) - z); }};
    const solver::DirichletProblem problem(CylinderGeometry(4, l), spec, psi, Manufactured::u(-l), Manufactured::u(l));
    const std::vector<double> schedule{0.0, 0.5, 0.99};
    std::vector<std::vector<double>> err;  // [grid][t]
    for (int nodes : {101, 201, 401}) {
        const auto init = RadialProfile::sample(geometry::uniform_grid(l, nodes),
                                                [](double x) { return Manufactured::u(x) + 1e-3 * std::cos(x); });
        solver::ContinuationOptions opts;
        opts.check_jacobian = false;
        const auto rep = solver::continuation_run(problem, schedule, opts, init);
        std::vector<double> e;
        for (const auto& st : rep.states) {
            double mx = 0.0;
            for (std::size_t i = 0; i < st.profile.size(); ++i)
                mx = std::max(mx, std::abs(st.profile.u()[i] - Manufactured::u(st.profile.grid()[i])));
            e.push_back(mx);
        }
        err.push_back(e);
    }
    double min_order = 1e300;
    std::string orders;
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        const double o1 = std::log2(err[0][j] / err[1][j]);
        const double o2 = std::log2(err[1][j] / err[2][j]);
        min_order = std::min({min_order, o1, o2});
        orders += fmt::format(" t={:g}: {:.3f}/{:.3f}", schedule[j], o1, o2);
    }
    return {min_order >= kMinOrder, fmt::format("observed orders{} (min {:.3f}, need >= {:g})", orders, min_order,
                                                kMinOrder)};
}

// ---- 8 --------------------------------------------------------------------

constexpr double kUniformity = 2.0;
constexpr double kBelowSub = 1e-8;

Outcome uniformity() {
    const auto spec = SymFuncSpec::sigma_root(4, 2);
    const double l = 0.4;
    auto sub_fn = [](double x) { return 0.5 * x * x + 0.4 * x; };
    const auto sub = RadialProfile::sample(geometry::uniform_grid(l, 401), sub_fn);
    auto f_sub = [spec](double x) { return symfun::f_eval(spec, geometry::radial_eigenvalues(4, x + 0.4, 1.0)); };
    solver::RightHandSide psi{"scaled_subsolution", [f_sub](double x, double, double) { return 0.5 * f_sub(x); },
                              [](double, double, double) { return 0.0; }};
    const solver::DirichletProblem problem(CylinderGeometry(4, l), spec, psi, sub_fn(-l), sub_fn(l), sub);
    solver::ContinuationOptions opts;
    opts.check_jacobian = false;
    const auto schedule = solver::default_schedule();
    try {
        const auto rep = solver::continuation_run(problem, schedule, opts);
        double below = 1e300;
        for (const auto& st : rep.states)
            for (std::size_t i = 0; i < st.profile.size(); ++i) below = std::min(below, st.profile.u()[i] - sub.u()[i]);
        const bool ok = rep.states.size() == schedule.size() && rep.ratio_u <= kUniformity &&
                        rep.ratio_du <= kUniformity && rep.ratio_d2u <= kUniformity && below >= -kBelowSub;
        return {ok, fmt::format("{} of {} t converged; max/min of sup|u| {:.4g}, sup|u'| {:.4g}, sup|u''| {:.4g} "
                                "(need <= {:g}); min u_t - u_sub {:.3g} (need >= {:g})",
                                rep.states.size(), schedule.size(), rep.ratio_u, rep.ratio_du, rep.ratio_d2u,
                                kUniformity, below, -kBelowSub)};
    } catch (const solver::ContinuationError& e) {
        return {false, fmt::format("continuation failed at t = {:g}: {}", e.failed_t(), e.what())};
    }
}

// ---- 9 --------------------------------------------------------------------

constexpr double kBand = 3.0;

Outcome blowup_shape() {
    const auto spec = SymFuncSpec::sigma_root(4, 2);
    const auto p = example1::ExampleParams::from_c(4, 2, 0.0);
    const double l = example1::half_length(p);
    const double a = p.rhs_coefficient();
    solver::RightHandSide psi{"example1", [a](double, double z, double) { return a * std::exp(-2.0 * z); },
                              [a](double, double z, double) { return -2.0 * a * std::exp(-2.0 * z); }};
    const solver::DirichletProblem problem(CylinderGeometry(4, l), spec, psi, p.c(), p.c());
    const auto init = RadialProfile::sample(geometry::uniform_grid(l, 401), [&p](double) { return p.c(); });
    solver::ContinuationOptions opts;
    opts.check_jacobian = false;
    opts.t_max = 0.99;
    const auto schedule = solver::default_schedule();
    try {
        const auto rep = solver::continuation_run(problem, schedule, opts, init);
        std::vector<double> sup, scaled;
        for (const auto& st : rep.states)
            if (st.t >= 0.9 - 1e-12) {
                sup.push_back(st.monitors.sup_d2u);
                scaled.push_back(st.monitors.sup_d2u * (1.0 - st.t));
            }
        bool monotone = sup.size() == 4;
        for (std::size_t i = 1; i < sup.size(); ++i) monotone = monotone && sup[i] >= sup[i - 1];
        const double band = *std::max_element(scaled.begin(), scaled.end()) /
                            *std::min_element(scaled.begin(), scaled.end());
        return {monotone && band <= kBand,
                fmt::format("sup|u''| at t = 0.9/0.95/0.975/0.99: {:.6g}, {:.6g}, {:.6g}, {:.6g} (non-decreasing: {}); "
                            "sup|u''|(1-t) band {:.4g} (need <= {:g})",
                            sup[0], sup[1], sup[2], sup[3], monotone ? "yes" : "no", band, kBand)};
    } catch (const solver::ContinuationError& e) {
        return {false, fmt::format("continuation failed at t = {:g}: {}", e.failed_t(), e.what())};
    }
}

// ---- 10 -------------------------------------------------------------------

Outcome guan_gap() {
    const auto rep = symfun::guan_gap_suite(SymFuncSpec::sigma_root(4, 2), 10000, 0.2, 10);
    return {rep.samples == 10000 && rep.min_eps > 0.0,
            fmt::format("{} separated samples ({} drawn), beta {:g}: eps in [{:.4g}, {:.4g}]", rep.samples,
                        rep.attempts, rep.beta, rep.min_eps, rep.max_eps)};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Example 1 closed form", 1.0, closed_form},
        {2, "Example 1 half length vs IVP oracle", 10.0, half_length_consistency},
        {3, "non-smoothness witness", 5.0, non_smoothness},
        {4, "structural suite", 30.0, structural_suite},
        {5, "ball inclusion in Gamma_t", 10.0, ball_suite},
        {6, "matrix_F identity and invariance", 10.0, matrix_identity},
        {7, "manufactured-solution convergence", 60.0, manufactured_convergence},
        {8, "uniformity across the t-family", 60.0, uniformity},
        {9, "blow-up shape with Example 1 data", 120.0, blowup_shape},
        {10, "Guan gap positivity", 30.0, guan_gap},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = out.passed && in_time;
        failures += !pass;
        fmt::print("{} [{}] {}: {} ({:.2f} s, budget {:g} s{})\n", pass ? "PASS" : "FAIL", c.id, c.title, out.detail,
                   secs, c.budget_s, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
