#pragma once

#include "yamabe/errors.hpp"
#include "yamabe/solver/discretization.hpp"

#include <limits>
#include <vector>

namespace yamabe::solver {

struct NewtonOptions {
    double tol = 1e-10;       ///< on the residual sup-norm
    int max_iterations = 50;
    int max_halvings = 50;
};

struct ContinuationState {
    double t = 0.0;
    geometry::RadialProfile profile;
    double residual_norm = 0.0;   ///< sup-norm
    Monitors monitors;
    double cone_margin = 0.0;
    int newton_iterations = 0;
    /// Sup-norm of each accepted Newton increment.
    std::vector<double> increments;
    /// Relative mismatch between analytic and difference Jacobians at the
    /// converged state; NaN when not checked.
    double jacobian_check = std::numeric_limits<double>::quiet_NaN();
    /// Intermediate t values solved to reach this state from the previous one.
    int substeps = 0;
};

/// Iteration budget exhausted; carries the iterate with the smallest residual.
class NonConvergence : public NumericalError {
public:
    NonConvergence(const std::string& what, ContinuationState best)
        : NumericalError(what), best_(std::move(best)) {}
    const ContinuationState& best() const noexcept { return best_; }

private:
    ContinuationState best_;
};

/// No damped step kept the profile in the cone with a smaller residual.
class StepFailure : public DomainError {
public:
    StepFailure(const std::string& what, ContinuationState last)
        : DomainError(what), last_(std::move(last)) {}
    const ContinuationState& last() const noexcept { return last_; }

private:
    ContinuationState last_;
};

/// Damped Newton for the discrete problem at fixed t. Trial steps are halved
/// until every interior node stays in Gamma_t and the residual 2-norm drops.
/// An init outside the cone raises ConeViolation before any iteration.
ContinuationState newton_solve(const DirichletProblem& problem, double t, const geometry::RadialProfile& init,
                               const NewtonOptions& opts = {});

} // namespace yamabe::solver
