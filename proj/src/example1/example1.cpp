#include "yamabe/example1/example1.hpp"

#include "yamabe/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace yamabe::example1 {

namespace {

namespace odeint = boost::numeric::odeint;
using boost::math::quadrature::gauss_kronrod;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPhaseSwitch = 1e-4;

void require_nk(int n, int k) {
    if (n < 3) throw ArgumentError("example1: n must be at least 3");
    if (k < 2 || k > n) throw ArgumentError("example1: need 2 <= k <= n");
}

// log q at u = d + s, accurate for small s.
double log_q_from_center(const ExampleParams& p, double s) {
    const int n = p.n(), k = p.k();
    return double(n - 2 * k) / k * s +
           std::log1p(std::exp(-2.0 * k * p.d()) * std::expm1(-n * s)) / k;
}

// log q at u = c - v, accurate for small v.
double log_q_from_boundary(const ExampleParams& p, double v) {
    if (v <= 0.0) return -kInf;
    const int n = p.n(), k = p.k();
    return -2.0 * p.c() - double(n - 2 * k) / k * v + std::log(std::expm1(n * v)) / k;
}

struct Pieces {
    double split;   // midpoint of [d, c]
    double s_max;   // sqrt(split - d)
    double w_max;   // (c - split)^{1/k}
};

Pieces pieces(const ExampleParams& p) {
    const double split = 0.5 * (p.d() + p.c());
    return {split, std::sqrt(split - p.d()), std::pow(p.c() - split, 1.0 / p.k())};
}

double integrate(const auto& f, double a, double b, const char* what) {
    if (b <= a) return 0.0;
    double error = 0.0;
    const double value = gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-12, &error);
    if (!std::isfinite(value) || error > 1e-10 * std::max(1.0, std::abs(value)))
        throw NumericalError(std::string("example1: quadrature for ") + what +
                             " did not converge (estimate " + std::to_string(value) + ", error " +
                             std::to_string(error) + ")");
    return value;
}

// Integrand pieces after x = d + s^2 and x = c - w^k; both are bounded.
double lower_integrand(const ExampleParams& p, double s) {
    if (s == 0.0) {
        // limit 2 / sqrt(g'(d)) with g = 1 - q, g'(d) = -dE/ds at 0
        const int n = p.n(), k = p.k();
        const double slope = double(n - 2 * k) / k - n * std::exp(-2.0 * k * p.d()) / k;
        return 2.0 / std::sqrt(-slope);
    }
    const double g = -std::expm1(log_q_from_center(p, s * s));
    return 2.0 * s / std::sqrt(g);
}

double upper_integrand(const ExampleParams& p, double w) {
    const int k = p.k();
    if (w == 0.0) return k == 1 ? 1.0 : 0.0;
    const double g = -std::expm1(log_q_from_boundary(p, std::pow(w, k)));
    return k * std::pow(w, k - 1) / std::sqrt(g);
}

double profile_sigma_root(int n, int k, double du, double d2u, bool& in_cone) {
    const auto lam = geometry::radial_eigenvalues(n, du, d2u);
    const auto s = symfun::sigma_all(lam, k);
    double scale = 0.0;
    for (double x : lam) scale = std::max(scale, std::abs(x));
    in_cone = true;
    for (int j = 1; j <= k; ++j)
        if (s[j] < -1e-14 * std::pow(scale, j)) in_cone = false;
    return in_cone ? std::pow(std::max(s[k], 0.0), 1.0 / k) : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

ExampleParams::ExampleParams(int n, int k, double c, double d) : n_(n), k_(k), c_(c), d_(d) {}

ExampleParams ExampleParams::from_c(int n, int k, double c) {
    require_nk(n, k);
    if (!std::isfinite(c)) throw ArgumentError("example1: c must be finite");
    return ExampleParams(n, k, c, d_from_c(n, k, c));
}

ExampleParams ExampleParams::from_d(int n, int k, double d) {
    require_nk(n, k);
    if (!(d < 0.0)) throw ArgumentError("example1: d must be negative");
    return ExampleParams(n, k, boundary_value(n, k, d), d);
}

ExampleParams ExampleParams::from_pair(int n, int k, double c, double d) {
    auto p = from_d(n, k, d);
    if (std::abs(p.c() - c) > 1e-10)
        throw ArgumentError("example1: c and d inconsistent (c(d) = " + std::to_string(p.c()) + ")");
    p.c_ = c;
    return p;
}

double ExampleParams::level() const { return first_integral(n_, k_, d_, 0.0); }

double ExampleParams::rhs_coefficient() const {
    return std::pow(n_ / (k_ * std::pow(2.0, k_)) * symfun::binomial(n_ - 1, k_ - 1), 1.0 / k_);
}

double first_integral(int n, int k, double x, double y) {
    if (!(std::abs(y) < 1.0)) throw DomainError("first_integral: need |y| < 1");
    return std::exp((2 * k - n) * x) * std::pow(1.0 - y * y, k) - std::exp(-n * x);
}

double boundary_value(int n, int k, double d) {
    require_nk(n, k);
    if (!(d < 0.0)) throw ArgumentError("boundary_value: d must be negative");
    // |H(d,0)| = e^{-nd} (1 - e^{2kd}); log1p keeps precision for d near 0.
    return d - std::log(-std::expm1(2.0 * k * d)) / n;
}

double d_from_c(int n, int k, double c) {
    require_nk(n, k);
    // boundary_value increases from -inf to +inf on (-inf, 0).
    double lo = -1.0, hi = -0.5;
    while (boundary_value(n, k, lo) > c) lo *= 2.0;
    while (boundary_value(n, k, hi) < c) hi *= 0.5;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (boundary_value(n, k, mid) < c ? lo : hi) = mid;
    }
    const double d = std::abs(boundary_value(n, k, lo) - c) <= std::abs(boundary_value(n, k, hi) - c) ? lo : hi;
    if (std::abs(boundary_value(n, k, d) - c) > 1e-12 * std::max(1.0, std::abs(c)))
        throw NumericalError("d_from_c: bisection residual above 1e-12");
    return d;
}

double speed_deficit(const ExampleParams& p, double u) {
    const double s = u - p.d();
    const double v = p.c() - u;
    if (s <= 0.0) return 1.0;
    if (v <= 0.0) return 0.0;
    return std::exp(s <= v ? log_q_from_center(p, s) : log_q_from_boundary(p, v));
}

double second_derivative(const ExampleParams& p, double u, double q) {
    const int n = p.n(), k = p.k();
    return n / (2.0 * k) * std::exp(-2.0 * k * u) / std::pow(q, k - 1) - double(n - 2 * k) / (2 * k) * q;
}

double half_length(const ExampleParams& p) {
    const auto pc = pieces(p);
    return integrate([&](double s) { return lower_integrand(p, s); }, 0.0, pc.s_max, "T_d (center)") +
           integrate([&](double w) { return upper_integrand(p, w); }, 0.0, pc.w_max, "T_d (boundary)");
}

double time_to_boundary(const ExampleParams& p, double u) {
    if (u >= p.c()) return 0.0;
    if (u <= p.d()) return half_length(p);
    const auto pc = pieces(p);
    if (u >= pc.split)
        return integrate([&](double w) { return upper_integrand(p, w); }, 0.0,
                         std::pow(p.c() - u, 1.0 / p.k()), "boundary time");
    return integrate([&](double s) { return lower_integrand(p, s); }, std::sqrt(u - p.d()), pc.s_max,
                     "boundary time") +
           integrate([&](double w) { return upper_integrand(p, w); }, 0.0, pc.w_max, "boundary time");
}

PointState state_near_boundary(const ExampleParams& p, double delta) {
    if (!(delta > 0.0)) throw ArgumentError("state_near_boundary: delta must be positive");
    // time_to_boundary grows with v = c - u; bisect on v.
    double lo = 0.0, hi = p.c() - p.d();
    if (time_to_boundary(p, p.d()) <= delta) throw ArgumentError("state_near_boundary: delta exceeds T_d");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (time_to_boundary(p, p.c() - mid) < delta ? lo : hi) = mid;
    }
    PointState st;
    st.u = p.c() - 0.5 * (lo + hi);
    st.q = speed_deficit(p, st.u);
    st.du = std::sqrt(1.0 - st.q);
    st.d2u = second_derivative(p, st.u, st.q);
    return st;
}

ExampleSolution solve_profile(const ExampleParams& p, int node_count) {
    if (node_count < 5) throw ArgumentError("solve_profile: need at least 5 nodes");
    const double T = half_length(p);
    auto grid = geometry::uniform_grid(T, node_count);
    const std::size_t N = grid.size();
    std::vector<double> u(N), du(N), d2u(N);

    // Nodes with x >= 0 strictly inside the interval, in increasing order.
    std::vector<std::size_t> right;
    for (std::size_t i = 0; i + 1 < N; ++i)
        if (grid[i] >= 0.0) right.push_back(i);

    using State2 = std::array<double, 2>;
    auto second_order = [&](const State2& y, State2& dy, double) {
        const double q = 1.0 - y[1] * y[1];
        dy[0] = y[1];
        dy[1] = second_derivative(p, y[0], q);
    };
    auto stepper2 = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State2>());
    stepper2.initialize(State2{p.d(), 0.0}, 0.0, 1e-3 * T);

    std::size_t next = 0;
    auto record = [&](std::size_t i, double ui, double qi) {
        u[i] = ui;
        du[i] = std::sqrt(1.0 - qi);
        d2u[i] = second_derivative(p, ui, qi);
    };

    State2 y{};
    while (next < right.size()) {
        const auto [t0, t1] = stepper2.do_step(second_order);
        if (stepper2.current_time_step() < 1e-15 * T)
            throw NumericalError("solve_profile: step size underflow in the second-order phase");
        const double q = 1.0 - stepper2.current_state()[1] * stepper2.current_state()[1];
        const bool switching = q < kPhaseSwitch;
        // Nodes reached during this step; near the switch point use the
        // first-order phase instead so the speed stays tied to the first integral.
        while (next < right.size() && grid[right[next]] <= t1 && !switching) {
            stepper2.calc_state(grid[right[next]], y);
            record(right[next], y[0], 1.0 - y[1] * y[1]);
            ++next;
        }
        if (switching) {
            // Restart the last step's range from its beginning in first-order form.
            State2 start{};
            stepper2.calc_state(t0, start);
            using State1 = std::array<double, 1>;
            auto first_order = [&](const State1& z, State1& dz, double) {
                dz[0] = std::sqrt(1.0 - speed_deficit(p, z[0]));
            };
            auto stepper1 = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State1>());
            stepper1.initialize(State1{start[0]}, t0, std::max(1e-12, 1e-6 * T));
            State1 z{};
            while (next < right.size()) {
                const auto [s0, s1] = stepper1.do_step(first_order);
                (void)s0;
                if (stepper1.current_time_step() < 1e-16 * T)
                    throw NumericalError("solve_profile: step size underflow in the first-order phase");
                while (next < right.size() && grid[right[next]] <= s1) {
                    stepper1.calc_state(grid[right[next]], z);
                    record(right[next], z[0], speed_deficit(p, z[0]));
                    ++next;
                }
            }
            break;
        }
    }

    // Mirror onto the left half; u is even.
    for (std::size_t i : right) {
        const std::size_t j = N - 1 - i;
        u[j] = u[i];
        du[j] = -du[i];
        d2u[j] = d2u[i];
    }
    u.front() = u.back() = p.c();
    du.front() = -1.0;
    du.back() = 1.0;
    d2u.front() = d2u.back() = kInf;

    const double level = p.level();
    double drift = 0.0;
    for (std::size_t i = 1; i + 1 < N; ++i)
        drift = std::max(drift, std::abs(first_integral(p.n(), p.k(), u[i], du[i]) - level));

    return ExampleSolution{p, T, geometry::RadialProfile(std::move(grid), std::move(u)), std::move(du),
                           std::move(d2u), drift};
}

bool ExampleReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const symfun::CheckResult* ExampleReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ExampleReport verify_example(const ExampleParams& p, const geometry::RadialProfile& profile,
                             const std::vector<double>* du_nodal, const std::vector<double>* d2u_nodal,
                             const VerifyOptions& opts) {
    const std::size_t N = profile.size();
    const bool nodal = du_nodal && d2u_nodal;
    if (nodal && (du_nodal->size() != N || d2u_nodal->size() != N))
        throw ArgumentError("verify_example: nodal derivatives do not match the profile");
    const auto xs = profile.grid();
    const auto us = profile.u();
    auto du_at = [&](std::size_t i) { return nodal ? (*du_nodal)[i] : profile.du()[i]; };
    auto d2u_at = [&](std::size_t i) { return nodal ? (*d2u_nodal)[i] : profile.d2u()[i]; };

    ExampleReport rep;
    rep.d = p.d();
    rep.c = p.c();
    rep.half_length = profile.half_length();
    rep.residual.assign(N, 0.0);

    const double coeff = p.rhs_coefficient();
    double max_res = 0.0, min_q = kInf, drift = 0.0, core = 0.0;
    int outside = 0;
    const double level = p.level();
    for (std::size_t i = 1; i + 1 < N; ++i) {
        bool in_cone = false;
        const double f = profile_sigma_root(p.n(), p.k(), du_at(i), d2u_at(i), in_cone);
        const double r = f - coeff * std::exp(-2.0 * us[i]);
        rep.residual[i] = r;
        if (!in_cone) ++outside;
        max_res = std::max(max_res, std::isnan(r) ? kInf : std::abs(r));
        const double q = 1.0 - du_at(i) * du_at(i);
        min_q = std::min(min_q, q);
        if (nodal && q > 0.0) drift = std::max(drift, std::abs(first_integral(p.n(), p.k(), us[i], du_at(i)) - level));
        if (std::abs(xs[i]) <= 0.5 * profile.half_length()) {
            bool inside = false;
            const double fs = profile_sigma_root(p.n(), p.k(), profile.du()[i], profile.d2u()[i], inside);
            const double rs = fs - coeff * std::exp(-2.0 * us[i]);
            core = std::max(core, std::isnan(rs) ? kInf : std::abs(rs));
        }
    }
    rep.stencil_core_residual = core;

    double even = 0.0;
    for (std::size_t i = 0; i < N; ++i) even = std::max(even, std::abs(us[i] - us[N - 1 - i]));
    const double boundary = std::max(std::abs(us.front() - p.c()), std::abs(us.back() - p.c()));

    rep.checks.push_back({"cone_membership", outside == 0, double(outside), 0.0,
                          "interior nodes outside the closed Garding cone"});
    rep.checks.push_back({"interior_residual", max_res <= opts.residual_tol, max_res, opts.residual_tol,
                          nodal ? "nodal derivatives" : "stencil derivatives"});
    rep.checks.push_back({"strict_speed_bound", min_q > 0.0, min_q, 0.0, "min over interior of 1 - u'^2"});
    rep.checks.push_back({"boundary_value", boundary <= opts.boundary_tol, boundary, opts.boundary_tol,
                          "max |u(+-l) - c|"});
    if (nodal)
        rep.checks.push_back({"first_integral_drift", drift <= opts.drift_tol, drift, opts.drift_tol,
                              "max |H(u, u') - H(d, 0)|"});
    rep.checks.push_back({"evenness", even <= opts.evenness_tol, even, opts.evenness_tol, "max |u(x) - u(-x)|"});
    const double roundtrip = std::abs(boundary_value(p.n(), p.k(), p.d()) - p.c());
    rep.checks.push_back({"c_roundtrip", roundtrip <= 1e-10, roundtrip, 1e-10, "|-(1/n) ln|H(d,0)| - c|"});

    const double T = half_length(p);
    bool increasing = true;
    for (double frac : {1e-2, 1e-3, 1e-4}) {
        const double delta = frac * T;
        const auto st = state_near_boundary(p, delta);
        if (!rep.ddot_left.empty() && !(st.d2u > rep.ddot_left.back())) increasing = false;
        rep.ddot_deltas.push_back(delta);
        // The solution is even, so both ends carry the same value.
        rep.ddot_left.push_back(st.d2u);
        rep.ddot_right.push_back(st.d2u);
    }
    const double growth = rep.ddot_left.back() / rep.ddot_left.front();
    rep.checks.push_back({"ddot_blowup", increasing && growth > opts.growth_threshold, growth,
                          opts.growth_threshold, "u''(1e-4 T) / u''(1e-2 T) from each endpoint, strictly increasing"});
    return rep;
}

} // namespace yamabe::example1
