#include "yamabe/solver/newton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace yamabe::solver {

namespace {

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::string sci(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

double two_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

ContinuationState make_state(const DirichletProblem& problem, double t, const geometry::RadialProfile& u,
                             std::span<const double> g, int iterations, std::vector<double> increments) {
    return ContinuationState{t,
                             u,
                             sup_norm(g),
                             estimate_monitors(u),
                             profile_cone_margin(problem, t, u),
                             iterations,
                             std::move(increments)};
}

} // namespace

ContinuationState newton_solve(const DirichletProblem& problem, double t, const geometry::RadialProfile& init,
                               const NewtonOptions& opts) {
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("newton_solve: t must lie in [0, 1]");
    geometry::RadialProfile u = init;
    std::vector<double> g = residual(problem, t, u);  // ConeViolation here is the precondition failure
    std::vector<double> increments;
    double g2 = two_norm(g);

    for (int it = 0;; ++it) {
        if (sup_norm(g) <= opts.tol) return make_state(problem, t, u, g, it, std::move(increments));
        if (it == opts.max_iterations)
            throw NonConvergence("newton_solve: no convergence in " + std::to_string(it) +
                                     " iterations at t = " + sci(t) + " (residual " +
                                     sci(sup_norm(g)) + ")",
                                 make_state(problem, t, u, g, it, std::move(increments)));

        const auto delta = solve_tridiagonal(jacobian(problem, t, u), g);
        double step = 1.0;
        bool accepted = false;
        bool any_in_cone = false;
        std::vector<double> trial(u.size());
        for (int half = 0; half <= opts.max_halvings; ++half, step *= 0.5) {
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = u.u()[i] - step * delta[i];
            auto candidate = u.with_values(trial);
            std::vector<double> gc;
            try {
                gc = residual(problem, t, candidate);
            } catch (const ConeViolation&) {
                continue;
            }
            any_in_cone = true;
            const double gc2 = two_norm(gc);
            if (gc2 < g2) {
                u = std::move(candidate);
                g = std::move(gc);
                g2 = gc2;
                increments.push_back(step * sup_norm(delta));
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            auto state = make_state(problem, t, u, g, it, std::move(increments));
            if (!any_in_cone)
                throw StepFailure("newton_solve: every damped step leaves Gamma_t at t = " + sci(t),
                                  std::move(state));
            throw NonConvergence("newton_solve: line search found no decrease at t = " + sci(t) +
                                     " (residual " + sci(state.residual_norm) + ")",
                                 std::move(state));
        }
    }
}

} // namespace yamabe::solver
