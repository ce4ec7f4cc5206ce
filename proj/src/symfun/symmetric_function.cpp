#include "yamabe/symfun/symmetric_function.hpp"

#include "yamabe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace yamabe::symfun {

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void require_size(const SymFuncSpec& spec, std::span<const double> lambda, const char* op) {
    if (static_cast<int>(lambda.size()) != spec.n())
        throw ArgumentError(std::string(op) + ": expected " + std::to_string(spec.n()) +
                            " eigenvalues, got " + std::to_string(lambda.size()));
}

void require_member(const SymFuncSpec& spec, std::span<const double> lambda, const char* op) {
    require_size(spec, lambda, op);
    if (!cone_member(spec, lambda))
        throw DomainError(std::string(op) + ": point outside " + spec.name() + " cone");
}

void require_t(double t, const char* op) {
    if (!(t >= 0.0 && t <= 1.0))
        throw ArgumentError(std::string(op) + ": t = " + std::to_string(t) + " outside [0, 1]");
}

// Unchecked evaluation; the caller has established cone membership.
double raw_value(const SymFuncSpec& spec, std::span<const double> lambda) {
    switch (spec.kind()) {
    case FunctionKind::sigma_root:
        return std::pow(sigma(lambda, spec.k()), 1.0 / spec.k());
    case FunctionKind::quotient: {
        const auto s = sigma_all(lambda, spec.k());
        return std::pow(s[spec.k()] / s[spec.l()], 1.0 / (spec.k() - spec.l()));
    }
    case FunctionKind::sigma1_squared: {
        const double s1 = sum(lambda);
        return s1 * s1;
    }
    }
    return 0.0;
}

std::vector<double> raw_gradient(const SymFuncSpec& spec, std::span<const double> lambda) {
    const int k = spec.k();
    switch (spec.kind()) {
    case FunctionKind::sigma_root: {
        const double sk = sigma(lambda, k);
        auto g = sigma_gradient(lambda, k);
        const double c = std::pow(sk, 1.0 / k - 1.0) / k;
        for (double& x : g) x *= c;
        return g;
    }
    case FunctionKind::quotient: {
        const int l = spec.l();
        const auto s = sigma_all(lambda, k);
        const double f = std::pow(s[k] / s[l], 1.0 / (k - l));
        const auto gk = sigma_gradient(lambda, k);
        const auto gl = sigma_gradient(lambda, l);
        std::vector<double> g(lambda.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            g[i] = f / (k - l) * (gk[i] / s[k] - gl[i] / s[l]);
        return g;
    }
    case FunctionKind::sigma1_squared:
        return std::vector<double>(lambda.size(), 2.0 * sum(lambda));
    }
    return {};
}

} // namespace

SymFuncSpec::SymFuncSpec(FunctionKind kind, int n, int k, int l)
    : kind_(kind), n_(n), k_(k), l_(l) {}

SymFuncSpec SymFuncSpec::sigma_root(int n, int k) {
    if (n < 1 || k < 1 || k > n)
        throw ArgumentError("sigma_root: need 1 <= k <= n, got n = " + std::to_string(n) +
                            ", k = " + std::to_string(k));
    return SymFuncSpec(FunctionKind::sigma_root, n, k, 0);
}

SymFuncSpec SymFuncSpec::quotient(int n, int k, int l) {
    if (n < 2 || l < 1 || l >= k || k > n)
        throw ArgumentError("quotient: need 1 <= l < k <= n, got n = " + std::to_string(n) +
                            ", k = " + std::to_string(k) + ", l = " + std::to_string(l));
    return SymFuncSpec(FunctionKind::quotient, n, k, l);
}

SymFuncSpec SymFuncSpec::sigma1_squared(int n) {
    if (n < 1) throw ArgumentError("sigma1_squared: n must be positive");
    return SymFuncSpec(FunctionKind::sigma1_squared, n, 1, 0);
}

SymFuncSpec SymFuncSpec::with_margin(double margin) const {
    if (!(margin >= 0.0)) throw ArgumentError("cone margin must be non-negative");
    SymFuncSpec s = *this;
    s.margin_ = margin;
    return s;
}

std::string SymFuncSpec::name() const {
    const std::string dims = "n=" + std::to_string(n_);
    switch (kind_) {
    case FunctionKind::sigma_root:
        return "sigma_" + std::to_string(k_) + "^(1/" + std::to_string(k_) + ") " + dims;
    case FunctionKind::quotient:
        return "(sigma_" + std::to_string(k_) + "/sigma_" + std::to_string(l_) + ")^(1/" +
               std::to_string(k_ - l_) + ") " + dims;
    case FunctionKind::sigma1_squared:
        return "sigma_1^2 " + dims;
    }
    return "unknown";
}

double SymFuncSpec::value_at_ones() const {
    const std::vector<double> e(static_cast<std::size_t>(n_), 1.0);
    return raw_value(*this, e);
}

bool garding_member(std::span<const double> lambda, int m, double margin) {
    if (m <= 0) return true;
    const int n = static_cast<int>(lambda.size());
    const double scale = max_abs(lambda);
    if (scale == 0.0) return false;
    const auto s = sigma_all(lambda, m);
    for (int j = 1; j <= m; ++j) {
        if (!(s[j] > margin * binomial(n, j) * std::pow(scale, j))) return false;
    }
    return true;
}

bool cone_member(const SymFuncSpec& spec, std::span<const double> lambda) {
    require_size(spec, lambda, "cone_member");
    return garding_member(lambda, spec.cone_order(), spec.margin());
}

double f_eval(const SymFuncSpec& spec, std::span<const double> lambda) {
    require_member(spec, lambda, "f_eval");
    return raw_value(spec, lambda);
}

std::vector<double> f_grad(const SymFuncSpec& spec, std::span<const double> lambda) {
    require_member(spec, lambda, "f_grad");
    return raw_gradient(spec, lambda);
}

std::vector<double> interpolate(double t, std::span<const double> lambda) {
    const double shift = (1.0 - t) * sum(lambda);
    std::vector<double> out(lambda.begin(), lambda.end());
    for (double& x : out) x = t * x + shift;
    return out;
}

bool gamma_t_member(const SymFuncSpec& spec, double t, std::span<const double> lambda) {
    require_t(t, "gamma_t_member");
    return cone_member(spec, interpolate(t, lambda));
}

double ft_eval(const SymFuncSpec& spec, double t, std::span<const double> lambda) {
    require_t(t, "ft_eval");
    require_size(spec, lambda, "ft_eval");
    const auto mu = interpolate(t, lambda);
    if (!cone_member(spec, mu)) throw DomainError("ft_eval: point outside Gamma_t");
    return raw_value(spec, mu);
}

std::vector<double> ft_grad(const SymFuncSpec& spec, double t, std::span<const double> lambda) {
    require_t(t, "ft_grad");
    require_size(spec, lambda, "ft_grad");
    const auto mu = interpolate(t, lambda);
    if (!cone_member(spec, mu)) throw DomainError("ft_grad: point outside Gamma_t");
    auto g = raw_gradient(spec, mu);
    const double shift = (1.0 - t) * sum(g);
    for (double& x : g) x = t * x + shift;
    return g;
}

std::vector<double> normal_direction(const SymFuncSpec& spec, double t,
                                     std::span<const double> lambda) {
    auto g = ft_grad(spec, t, lambda);
    const double len = norm(g);
    for (double& x : g) x /= len;
    return g;
}

double cone_margin(const SymFuncSpec& spec, double t, std::span<const double> lambda) {
    require_size(spec, lambda, "cone_margin");
    const auto mu = interpolate(t, lambda);
    const double scale = max_abs(mu);
    if (scale == 0.0) return 0.0;
    const int n = spec.n();
    const int m = spec.cone_order();
    const auto s = sigma_all(mu, m);
    double margin = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= m; ++j) {
        const double r = s[j] / (binomial(n, j) * std::pow(scale, j));
        margin = std::min(margin, std::copysign(std::pow(std::abs(r), 1.0 / j), r));
    }
    return margin;
}

TypeClassification classify_type(const SymFuncSpec& spec) {
    TypeClassification c;
    const int n = spec.n();
    c.cone_type = spec.cone_order() == 1 ? 2 : 1;
    c.f_type = spec.kind() == FunctionKind::quotient ? GrowthType::bounded : GrowthType::unbounded;

    // The axis point (0,...,0,1) is interior to Gamma exactly when a small
    // sideways perturbation of it stays inside.
    std::vector<double> probe(static_cast<std::size_t>(n), -1e-6);
    probe.back() = 1.0;
    c.numerical_cone_type = cone_member(spec, probe) ? 2 : 1;

    std::vector<double> lo(static_cast<std::size_t>(n), 1.0), hi(lo);
    lo.back() = 1e2;
    hi.back() = 1e10;
    c.growth_ratio = raw_value(spec, hi) / raw_value(spec, lo);
    c.numerical_f_type = c.growth_ratio > 2.0 ? GrowthType::unbounded : GrowthType::bounded;
    return c;
}

double growth_radius(const SymFuncSpec& spec, std::span<const EigenTuple> sample, double level) {
    if (classify_type(spec).f_type != GrowthType::unbounded)
        throw UnsupportedOperation("growth_radius: " + spec.name() + " is of bounded type");
    if (sample.empty()) throw ArgumentError("growth_radius: empty sample");
    for (const auto& lambda : sample) require_member(spec, lambda.values(), "growth_radius");

    auto worst = [&](double r) {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& lambda : sample) {
            std::vector<double> shifted(lambda.begin(), lambda.end());
            shifted.back() += r;
            m = std::min(m, raw_value(spec, shifted));
        }
        return m;
    };
    if (worst(0.0) >= level) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (worst(hi) < level) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw NumericalError("growth_radius: level not reached");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (worst(mid) >= level ? hi : lo) = mid;
    }
    return hi;
}

double f_infinity(const SymFuncSpec& spec, std::span<const double> lambda_prime) {
    if (spec.kind() != FunctionKind::quotient)
        throw UnsupportedOperation("f_infinity: " + spec.name() + " is of unbounded type");
    if (static_cast<int>(lambda_prime.size()) != spec.n() - 1)
        throw ArgumentError("f_infinity: expected " + std::to_string(spec.n() - 1) + " entries");
    const int k = spec.k();
    const int l = spec.l();
    if (!garding_member(lambda_prime, k - 1, spec.margin()))
        throw DomainError("f_infinity: point outside the projected cone");
    const auto s = sigma_all(lambda_prime, k - 1);
    return std::pow(s[k - 1] / s[l - 1], 1.0 / (k - l));
}

std::optional<double> guan_gap(const SymFuncSpec& spec, double t, std::span<const double> mu,
                               std::span<const double> lambda, double beta) {
    require_member(spec, mu, "guan_gap");
    const auto nu_mu = normal_direction(spec, t, mu);
    const auto nu_lambda = normal_direction(spec, t, lambda);
    double sep2 = 0.0;
    for (std::size_t i = 0; i < nu_mu.size(); ++i)
        sep2 += (nu_mu[i] - nu_lambda[i]) * (nu_mu[i] - nu_lambda[i]);
    if (std::sqrt(sep2) <= beta) return std::nullopt;

    const auto g = ft_grad(spec, t, lambda);
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) lhs += g[i] * (mu[i] - lambda[i]);
    const double gap = lhs - (ft_eval(spec, t, mu) - ft_eval(spec, t, lambda));
    return gap / (sum(g) + 1.0);
}

} // namespace yamabe::symfun
