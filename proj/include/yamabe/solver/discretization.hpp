#pragma once

#include "yamabe/solver/problem.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace yamabe::solver {

/// Tridiagonal matrix; lower[i] sits at (i, i-1), upper[i] at (i, i+1).
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
    std::size_t size() const noexcept { return diag.size(); }
    Eigen::MatrixXd dense() const;
};

/// Thomas algorithm; NumericalError on a vanishing pivot.
std::vector<double> solve_tridiagonal(const Tridiagonal& a, std::span<const double> rhs);

/// G_i = f_t(lambda(W[u](x_i))) - psi(x_i, u_i, t) at interior nodes, u - phi at
/// the two ends. ConeViolation names the first interior node outside Gamma_t.
std::vector<double> residual(const DirichletProblem& problem, double t, const geometry::RadialProfile& u);

/// Analytic Jacobian of residual through the two eigenvalue slots of W.
Tridiagonal jacobian(const DirichletProblem& problem, double t, const geometry::RadialProfile& u);

/// Column-wise central differences of residual, step 1e-5 dx^2 (1 + |u_j|).
Eigen::MatrixXd jacobian_fd(const DirichletProblem& problem, double t, const geometry::RadialProfile& u);

/// max |J - J_fd| / max |J_fd|.
double jacobian_mismatch(const DirichletProblem& problem, double t, const geometry::RadialProfile& u);

/// min over interior nodes of symfun::cone_margin for Gamma_t.
double profile_cone_margin(const DirichletProblem& problem, double t, const geometry::RadialProfile& u);

} // namespace yamabe::solver
