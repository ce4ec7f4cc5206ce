#include "yamabe/solver/discretization.hpp"

#include "yamabe/errors.hpp"
#include "yamabe/geometry/stencil.hpp"

#include <algorithm>
#include <cmath>

namespace yamabe::solver {

namespace {

void require_grid(const DirichletProblem& problem, const geometry::RadialProfile& u) {
    const double l = problem.geometry().half_length();
    if (std::abs(u.half_length() - l) > 1e-12 * std::max(1.0, l))
        throw ArgumentError("solver: profile grid does not span [-l, l] of the problem");
}

std::vector<double> node_eigenvalues(const DirichletProblem& problem, const geometry::RadialProfile& u,
                                     std::size_t i) {
    return geometry::radial_eigenvalues(problem.geometry().n(), u.du()[i], u.d2u()[i]);
}

void require_cone(const DirichletProblem& problem, double t, const geometry::RadialProfile& u, std::size_t i,
                  std::span<const double> lam) {
    if (!symfun::gamma_t_member(problem.spec(), t, lam))
        throw ConeViolation(i, u.grid()[i], "W-eigenvalues leave Gamma_t at node " + std::to_string(i));
}

} // namespace

Eigen::MatrixXd Tridiagonal::dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        if (i > 0) m(i, i - 1) = lower[i];
        if (i + 1 < n) m(i, i + 1) = upper[i];
    }
    return m;
}

std::vector<double> solve_tridiagonal(const Tridiagonal& a, std::span<const double> rhs) {
    const std::size_t n = a.size();
    if (rhs.size() != n) throw ArgumentError("solve_tridiagonal: size mismatch");
    std::vector<double> c(n, 0.0), x(rhs.begin(), rhs.end());
    double pivot = a.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) pivot = a.diag[i] - a.lower[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot))
            throw NumericalError("solve_tridiagonal: zero pivot at row " + std::to_string(i));
        if (i + 1 < n) c[i] = a.upper[i] / pivot;
        x[i] = (x[i] - (i > 0 ? a.lower[i] * x[i - 1] : 0.0)) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

std::vector<double> residual(const DirichletProblem& problem, double t, const geometry::RadialProfile& u) {
    require_grid(problem, u);
    const std::size_t N = u.size();
    std::vector<double> g(N);
    g.front() = u.u().front() - problem.phi_left();
    g.back() = u.u().back() - problem.phi_right();
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const auto lam = node_eigenvalues(problem, u, i);
        require_cone(problem, t, u, i, lam);
        g[i] = symfun::ft_eval(problem.spec(), t, lam) - problem.psi().value(u.grid()[i], u.u()[i], t);
    }
    return g;
}

Tridiagonal jacobian(const DirichletProblem& problem, double t, const geometry::RadialProfile& u) {
    require_grid(problem, u);
    const std::size_t N = u.size();
    const auto stencils = geometry::build_stencils(u.grid());
    Tridiagonal J(N);
    J.diag.front() = 1.0;
    J.diag.back() = 1.0;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const auto lam = node_eigenvalues(problem, u, i);
        require_cone(problem, t, u, i, lam);
        const auto grad = symfun::ft_grad(problem.spec(), t, lam);
        // lam = (u'' - b, b, ..., b) with b = (1 - u'^2) / 2.
        const double p = u.du()[i];
        double g_b = 0.0;
        for (std::size_t j = 1; j < grad.size(); ++j) g_b += grad[j];
        const double d_second = grad[0];
        const double d_first = p * (grad[0] - g_b);
        const auto& st = stencils[i];
        if (st.first + 1 != static_cast<int>(i) || st.d1.size() != 3 || st.d2.size() != 3)
            throw NumericalError("jacobian: interior stencil is not three-point");
        J.lower[i] = d_second * st.d2[0] + d_first * st.d1[0];
        J.diag[i] = d_second * st.d2[1] + d_first * st.d1[1] -
                    problem.psi().dz(u.grid()[i], u.u()[i], t);
        J.upper[i] = d_second * st.d2[2] + d_first * st.d1[2];
    }
    return J;
}

Eigen::MatrixXd jacobian_fd(const DirichletProblem& problem, double t, const geometry::RadialProfile& u) {
    const std::size_t N = u.size();
    Eigen::MatrixXd J(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    std::vector<double> v(u.u().begin(), u.u().end());
    // The residual is nonlinear in u'' ~ u / dx^2, so the step scales with dx^2.
    double dx = u.grid()[1] - u.grid()[0];
    for (std::size_t i = 2; i < N; ++i) dx = std::min(dx, u.grid()[i] - u.grid()[i - 1]);
    for (std::size_t j = 0; j < N; ++j) {
        const double h = 1e-5 * dx * dx * (1.0 + std::abs(v[j]));
        const double keep = v[j];
        v[j] = keep + h;
        const auto gp = residual(problem, t, u.with_values(v));
        v[j] = keep - h;
        const auto gm = residual(problem, t, u.with_values(v));
        v[j] = keep;
        for (std::size_t i = 0; i < N; ++i)
            J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (gp[i] - gm[i]) / (2.0 * h);
    }
    return J;
}

double jacobian_mismatch(const DirichletProblem& problem, double t, const geometry::RadialProfile& u) {
    const Eigen::MatrixXd fd = jacobian_fd(problem, t, u);
    const Eigen::MatrixXd an = jacobian(problem, t, u).dense();
    return (an - fd).cwiseAbs().maxCoeff() / fd.cwiseAbs().maxCoeff();
}

double profile_cone_margin(const DirichletProblem& problem, double t, const geometry::RadialProfile& u) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < u.size(); ++i)
        m = std::min(m, symfun::cone_margin(problem.spec(), t, node_eigenvalues(problem, u, i)));
    return m;
}

} // namespace yamabe::solver
