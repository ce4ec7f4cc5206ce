#pragma once

#include "yamabe/geometry/cylinder.hpp"
#include "yamabe/symfun/structure.hpp"

#include <optional>
#include <vector>

namespace yamabe::example1 {

/// Radial sigma_k problem on the round cylinder with boundary value c,
///   sigma_k(lambda(W[u])) = n / (k 2^k) C(n-1, k-1) e^{-2ku},  u(+-l) = c,
/// solved by the even profile through u(0) = d, u'(0) = 0.
class ExampleParams {
public:
    static ExampleParams from_c(int n, int k, double c);
    static ExampleParams from_d(int n, int k, double d);
    /// Both values given; they must satisfy c = -(1/n) ln|H(d, 0)| to 1e-10.
    static ExampleParams from_pair(int n, int k, double c, double d);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    /// H(d, 0), the value of the first integral along the profile.
    double level() const;
    /// [(n / (k 2^k)) C(n-1, k-1)]^{1/k}: the degree-one right-hand side is this times e^{-2u}.
    double rhs_coefficient() const;

private:
    ExampleParams(int n, int k, double c, double d);

    int n_;
    int k_;
    double c_;
    double d_;
};

/// H(x, y) = e^{(2k-n)x} (1 - y^2)^k - e^{-nx}; DomainError when |y| >= 1.
double first_integral(int n, int k, double x, double y);

/// -(1/n) ln|H(d, 0)|: the boundary value reached by the profile from d.
double boundary_value(int n, int k, double d);

/// The unique d < 0 with -(1/n) ln|H(d, 0)| = c.
double d_from_c(int n, int k, double c);

/// 1 - u'^2 as a function of u along the profile from d, evaluated without
/// cancellation at both ends of [d, boundary_value].
double speed_deficit(const ExampleParams& p, double u);

/// u'' from the ODE given u and q = 1 - u'^2.
double second_derivative(const ExampleParams& p, double u, double q);

/// Half length T_d of the maximal existence interval.
double half_length(const ExampleParams& p);

/// Time the profile needs to climb from u to the boundary value.
double time_to_boundary(const ExampleParams& p, double u);

struct PointState {
    double u = 0.0;
    double du = 0.0;   ///< |u'| (the profile is even; sign depends on the side)
    double d2u = 0.0;
    double q = 0.0;    ///< 1 - u'^2
};

/// State of the profile at distance delta inside from either endpoint.
PointState state_near_boundary(const ExampleParams& p, double delta);

struct ExampleSolution {
    ExampleParams params;
    double half_length = 0.0;
    geometry::RadialProfile profile;
    /// Derivatives of the continuous solution at the nodes (integrator state),
    /// with the endpoint values u' = +-1 and u'' = +inf.
    std::vector<double> du;
    std::vector<double> d2u;
    double max_first_integral_drift = 0.0;
};

/// Integrates the initial value problem u(0) = d, u'(0) = 0 onto a uniform
/// grid of [-T_d, T_d] with node_count nodes (odd counts put a node at 0).
/// The second-order form is used until 1 - u'^2 < 1e-4, then the first-order
/// form u' = sqrt(1 - q(u)) from the first integral; endpoint values are the
/// analytic limit.
ExampleSolution solve_profile(const ExampleParams& p, int node_count);

struct VerifyOptions {
    double residual_tol = 1e-7;
    double boundary_tol = 1e-6;
    double drift_tol = 1e-8;
    double evenness_tol = 1e-10;
    /// ddot u at 1e-4 T_d from the boundary must exceed this times its value at 1e-2 T_d.
    double growth_threshold = 10.0;
};

struct ExampleReport {
    std::vector<symfun::CheckResult> checks;
    double d = 0.0;
    double c = 0.0;
    double half_length = 0.0;
    /// Residual of the degree-one equation at each interior node (0 at the ends).
    std::vector<double> residual;
    /// Stencil-based residual on |x| <= l/2, for grid-convergence studies.
    double stencil_core_residual = 0.0;
    std::vector<double> ddot_deltas;
    std::vector<double> ddot_left;
    std::vector<double> ddot_right;

    bool all_passed() const;
    const symfun::CheckResult* find(const std::string& name) const;
};

/// Checks a profile against the example: interior residual, strict
/// ellipticity 1 - u'^2 > 0, boundary values, first-integral drift, evenness
/// and the blow-up of u'' at the boundary. Nodal derivatives are used when
/// supplied; otherwise the profile's stencil derivatives.
ExampleReport verify_example(const ExampleParams& p, const geometry::RadialProfile& profile,
                             const std::vector<double>* du = nullptr,
                             const std::vector<double>* d2u = nullptr,
                             const VerifyOptions& opts = {});

inline ExampleReport verify_example(const ExampleSolution& s, const VerifyOptions& opts = {}) {
    return verify_example(s.params, s.profile, &s.du, &s.d2u, opts);
}

} // namespace yamabe::example1
