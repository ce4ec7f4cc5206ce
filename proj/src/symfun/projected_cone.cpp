#include "yamabe/symfun/projected_cone.hpp"

#include "yamabe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace yamabe::symfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> along(std::span<const double> x, std::span<const double> v, double r) {
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += r * v[i];
    return y;
}

void normalize(std::vector<double>& v) {
    const double len = norm(v);
    for (double& x : v) x /= len;
}

} // namespace

ProjectedCone::ProjectedCone(const SymFuncSpec& parent) : parent_(parent) {
    if (parent.n() < 2) throw ArgumentError("ProjectedCone: need n >= 2");

    // Oracle check of the identification Gamma' = Gamma_{m} in R^{n-1}: for a
    // robustly interior or exterior lambda', (lambda', s) enters Gamma for large s
    // exactly when lambda' lies in Gamma_m.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> shift(-1.0, 2.0);
    const int d = dim();
    const int m = order();
    const int n = parent.n();
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> lp(static_cast<std::size_t>(d));
        const double c = shift(rng);
        for (double& x : lp) x = gauss(rng) + c;
        const auto s = sigma_all(lp, std::max(m, 0));
        double scale = 0.0;
        for (double x : lp) scale = std::max(scale, std::abs(x));
        bool robust = true;
        for (int j = 1; j <= m; ++j)
            robust = robust && std::abs(s[j]) > 1e-3 * binomial(d, j) * std::pow(scale, j);
        if (!robust) continue;
        std::vector<double> full(lp);
        full.push_back(1e4 * (1.0 + norm(lp)));
        const bool lifted = garding_member(full, parent.cone_order(), 0.0);
        if (lifted != garding_member(lp, m, 0.0))
            throw NumericalError("ProjectedCone: projected cone identification failed for " +
                                 parent.name() + " (n = " + std::to_string(n) + ")");
    }
}

bool ProjectedCone::contains(std::span<const double> lambda_prime) const {
    if (static_cast<int>(lambda_prime.size()) != dim())
        throw ArgumentError("ProjectedCone: expected " + std::to_string(dim()) + " entries");
    return garding_member(lambda_prime, order(), parent_.margin());
}

bool ProjectedCone::in_closure(std::span<const double> lambda_prime, double tol) const {
    if (static_cast<int>(lambda_prime.size()) != dim())
        throw ArgumentError("ProjectedCone: expected " + std::to_string(dim()) + " entries");
    const int m = order();
    if (m == 0) return true;
    double scale = 0.0;
    for (double x : lambda_prime) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return true;
    const auto s = sigma_all(lambda_prime, m);
    for (int j = 1; j <= m; ++j)
        if (s[j] < -tol * binomial(dim(), j) * std::pow(scale, j)) return false;
    return true;
}

std::vector<double> ProjectedCone::supporting_normal(std::span<const double> boundary_point) const {
    const int m = order();
    if (m == 0) throw UnsupportedOperation("supporting_normal: projected cone has no boundary");
    std::vector<double> g = m == 1 ? std::vector<double>(boundary_point.size(), 1.0)
                                   : sigma_gradient(boundary_point, m);
    const double len = norm(g);
    if (!(len > 0.0)) throw NumericalError("supporting_normal: degenerate boundary point");
    for (double& x : g) x /= len;
    return g;
}

double ProjectedCone::ray_exit(std::span<const double> lambda_prime,
                               std::span<const double> v) const {
    if (is_whole_space()) return kInf;
    if (!contains(lambda_prime)) throw DomainError("ray_exit: start point outside the cone");
    const double reach = 1e12 * (1.0 + norm(lambda_prime));
    double lo = 0.0, hi = 1.0;
    while (contains(along(lambda_prime, v, hi))) {
        lo = hi;
        hi *= 2.0;
        if (hi > reach) return kInf;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (contains(along(lambda_prime, v, mid)) ? lo : hi) = mid;
    }
    return hi;
}

std::vector<double> ProjectedCone::boundary_point_on_ray(std::span<const double> lambda_prime,
                                                         std::span<const double> v) const {
    const double r = ray_exit(lambda_prime, v);
    if (!std::isfinite(r)) throw DomainError("boundary_point_on_ray: ray never leaves the cone");
    return along(lambda_prime, v, r);
}

double dist_projected_cone(const ProjectedCone& pc, std::span<const double> lambda_prime) {
    if (pc.is_whole_space()) return kInf;
    std::vector<double> lp(lambda_prime.begin(), lambda_prime.end());
    std::sort(lp.begin(), lp.end());
    if (!pc.contains(lp)) {
        if (pc.in_closure(lp)) return 0.0;
        throw DomainError("dist_projected_cone: point outside the closure of the projected cone");
    }
    const int d = pc.dim();
    if (pc.order() == 1) return sum(lp) / std::sqrt(static_cast<double>(d));

    // Start directions: inward normal at lambda', the diagonal, and the
    // directions lowering the smallest few entries. Gamma' is symmetric, so an
    // ascending point has a nearest boundary point among these basins.
    std::vector<std::vector<double>> starts;
    {
        auto g = sigma_gradient(lp, pc.order());
        for (double& x : g) x = -x;
        normalize(g);
        starts.push_back(std::move(g));
    }
    starts.emplace_back(static_cast<std::size_t>(d), -1.0 / std::sqrt(static_cast<double>(d)));
    for (int j = 1; j < d; ++j) {
        std::vector<double> v(static_cast<std::size_t>(d), 0.0);
        for (int i = 0; i < j; ++i) v[i] = -1.0;
        normalize(v);
        starts.push_back(std::move(v));
    }

    double best = kInf;
    for (auto v : starts) {
        double r = pc.ray_exit(lp, v);
        for (int it = 0; it < 5000; ++it) {
            const auto x = along(lp, v, r);
            std::vector<double> g = sigma_gradient(x, pc.order());
            const double len = norm(g);
            if (!(len > 0.0)) break;
            for (std::size_t i = 0; i < g.size(); ++i) g[i] = -g[i] / len;
            const double r_next = pc.ray_exit(lp, g);
            if (!(r_next < r)) break;
            const bool settled = r - r_next <= 1e-15 * r;
            v = std::move(g);
            r = r_next;
            if (settled) break;
        }
        best = std::min(best, r);
    }
    return best;
}

} // namespace yamabe::symfun
