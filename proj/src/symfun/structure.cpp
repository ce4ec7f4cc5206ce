#include "yamabe/symfun/structure.hpp"

#include "yamabe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace yamabe::symfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exit distance from lambda along unit v for the unmargined cone.
double exit_distance(const SymFuncSpec& spec, std::span<const double> lambda,
                     std::span<const double> v) {
    auto inside = [&](double r) {
        std::vector<double> x(lambda.begin(), lambda.end());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += r * v[i];
        return garding_member(x, spec.cone_order(), 0.0);
    };
    double lo = 0.0, hi = 1.0;
    while (inside(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e15) return kInf;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (inside(mid) ? lo : hi) = mid;
    }
    return lo;
}

CheckResult at_least(std::string name, double measured, double threshold, std::string detail = {}) {
    return {std::move(name), measured >= threshold, measured, threshold, std::move(detail)};
}

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
    return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

} // namespace

bool StructureReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* StructureReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<double> random_unit_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    double len = 0.0;
    while (len < 1e-8) {
        for (double& x : v) x = gauss(rng);
        len = norm(v);
    }
    for (double& x : v) x /= len;
    return v;
}

std::vector<double> sample_gamma_t_point(const SymFuncSpec& spec, double t, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> shift(-0.5, 3.0);
    std::uniform_real_distribution<double> log_scale(-2.0, 2.0);
    std::vector<double> x(static_cast<std::size_t>(spec.n()));
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const double c = shift(rng);
        const double s = std::exp(log_scale(rng));
        for (double& v : x) v = s * (gauss(rng) + c);
        if (gamma_t_member(spec, t, x)) {
            std::sort(x.begin(), x.end());
            return x;
        }
    }
    throw NumericalError("sample_gamma_t_point: rejection sampling failed");
}

StructureReport verify_structure(const SymFuncSpec& spec, int sample_count, std::uint64_t seed) {
    if (sample_count < 1) throw ArgumentError("verify_structure: sample_count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_s(-3.0, 3.0);
    const int n = spec.n();
    const double fe = spec.value_at_ones();
    const SymFuncSpec exact = spec.with_margin(0.0);

    double min_f = kInf;
    double worst_vanish = 0.0;  // f near the boundary relative to f further in
    int vanish_failures = 0;
    double min_grad = kInf;
    double worst_order = -kInf;
    double worst_concavity = kInf;
    double worst_homogeneity = 0.0;
    double worst_f5 = kInf;
    double worst_f6 = -kInf;

    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(sample_count));
    for (int s = 0; s < sample_count; ++s) pts.push_back(sample_cone_point(spec, rng));

    const std::vector<double> down(static_cast<std::size_t>(n), -1.0 / std::sqrt(double(n)));
    for (int s = 0; s < sample_count; ++s) {
        const auto& lam = pts[static_cast<std::size_t>(s)];
        const double f = f_eval(spec, lam);
        min_f = std::min(min_f, f);

        // Approach the boundary along -e; f must shrink towards zero.
        const double r = exit_distance(spec, lam, down);
        if (std::isfinite(r)) {
            double prev = kInf, first = 0.0, last = 0.0;
            bool monotone = true;
            for (double delta : {1e-2, 1e-4, 1e-6, 1e-8}) {
                std::vector<double> x(lam);
                for (std::size_t i = 0; i < x.size(); ++i) x[i] += (1.0 - delta) * r * down[i];
                const double fx = f_eval(exact, x);
                if (!(fx < prev)) monotone = false;
                if (delta == 1e-2) first = fx;
                last = fx;
                prev = fx;
            }
            const double ratio = last / first;
            worst_vanish = std::max(worst_vanish, monotone ? ratio : kInf);
            if (!monotone || ratio > 0.5) ++vanish_failures;
        }

        const auto g = f_grad(spec, lam);
        const double glen = norm(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            min_grad = std::min(min_grad, g[i] / glen);
            if (i + 1 < g.size()) worst_order = std::max(worst_order, (g[i + 1] - g[i]) / glen);
        }

        const auto& mu = pts[static_cast<std::size_t>((s + 1) % sample_count)];
        std::vector<double> mid(lam);
        for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (lam[i] + mu[i]);
        worst_concavity =
            std::min(worst_concavity, f_eval(spec, mid) - 0.5 * (f + f_eval(spec, mu)));

        const double sc = std::exp(log_s(rng));
        std::vector<double> scaled(lam);
        for (double& x : scaled) x *= sc;
        worst_homogeneity =
            std::max(worst_homogeneity, std::abs(f_eval(spec, scaled) - sc * f) / (sc * f));

        worst_f5 = std::min(worst_f5, sum(g) - fe);
        worst_f6 = std::max(worst_f6, f - sum(lam) * fe / n);
    }

    StructureReport rep;
    rep.function = spec.name();
    rep.samples = sample_count;
    rep.seed = seed;
    rep.checks.push_back({"f1_positive", min_f > 0.0, min_f, 0.0, "min f over samples"});
    rep.checks.push_back({"f1_boundary_vanishing", vanish_failures == 0, worst_vanish, 0.5,
                          "f(1e-8 from boundary) / f(1e-2 from boundary) along -e"});
    rep.checks.push_back({"f2_positive_gradient", min_grad > 0.0, min_grad, 0.0,
                          "min d_i f / |Df|"});
    rep.checks.push_back(at_most("f2_gradient_ordering", worst_order, 1e-10,
                                 "max (d_{i+1} f - d_i f) / |Df| for ascending lambda"));
    rep.checks.push_back(at_least("f3_concavity", worst_concavity, -1e-10,
                                  "min f((a+b)/2) - (f(a)+f(b))/2"));
    rep.checks.push_back(at_most("f4_homogeneity", worst_homogeneity, 1e-12,
                                 "max |f(s l) - s f(l)| / (s f(l))"));
    rep.checks.push_back(at_least("f5_gradient_sum", worst_f5, -1e-10, "min sum_i d_i f - f(e)"));
    rep.checks.push_back(at_most("f6_trace_bound", worst_f6, 1e-10,
                                 "max f(l) - sigma_1(l) f(e) / n"));
    return rep;
}

std::vector<BallCase> verify_ball_inclusion(const SymFuncSpec& spec, std::span<const double> ts,
                                            int directions, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int n = spec.n();
    const double fe = spec.value_at_ones();
    std::vector<BallCase> out;
    for (double t : ts) {
        if (!(t >= 0.0 && t < 1.0)) throw ArgumentError("verify_ball_inclusion: t must lie in [0, 1)");
        BallCase c;
        c.t = t;
        c.radius = 0.99 * (1.0 - t) / (2.0 * n);
        c.bound = 0.5 * (1.0 - t) * fe;
        for (int d = 0; d < directions; ++d) {
            const auto v = random_unit_vector(n, rng);
            std::vector<double> x(static_cast<std::size_t>(n), 0.0);
            x.back() = 1.0;
            for (int i = 0; i < n; ++i) x[i] += c.radius * v[i];
            if (!gamma_t_member(spec, t, x)) {
                ++c.outside;
                continue;
            }
            if (ft_eval(spec, t, x) < c.bound) ++c.below_bound;
        }
        const double a = (1.0 - t) / (2.0 * n);
        std::vector<double> corner(static_cast<std::size_t>(n), -a);
        corner.back() = 1.0 - a;
        c.corner_value = gamma_t_member(spec, t, corner) ? ft_eval(spec, t, corner) : -kInf;
        out.push_back(c);
    }
    return out;
}

GuanSuiteReport guan_gap_suite(const SymFuncSpec& spec, int samples, double beta, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = spec.n();
    GuanSuiteReport rep;
    rep.beta = beta;
    rep.min_eps = kInf;
    rep.max_eps = -kInf;
    while (rep.samples < samples) {
        if (++rep.attempts > 1000L * samples + 100000L)
            throw NumericalError("guan_gap_suite: could not find separated samples");
        const double t = unit(rng);
        // mu in the closed ball of radius 1/2 about e, inside Gamma_n.
        auto mu = random_unit_vector(n, rng);
        const double rad = 0.5 * std::pow(unit(rng), 1.0 / n);
        for (double& x : mu) x = 1.0 + rad * x;
        const auto lam = sample_gamma_t_point(spec, t, rng);
        const auto eps = guan_gap(spec, t, mu, lam, beta);
        if (!eps) continue;
        ++rep.samples;
        rep.min_eps = std::min(rep.min_eps, *eps);
        rep.max_eps = std::max(rep.max_eps, *eps);
    }
    return rep;
}

} // namespace yamabe::symfun
