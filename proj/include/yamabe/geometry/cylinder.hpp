#pragma once

#include "yamabe/symfun/elementary.hpp"
#include "yamabe/symfun/symmetric_function.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace yamabe::geometry {

/// The round cylinder [-l, l] x S^{n-1} with g = dt^2 + h.
class CylinderGeometry {
public:
    CylinderGeometry(int n, double half_length);

    int n() const noexcept { return n_; }
    double half_length() const noexcept { return half_length_; }

private:
    int n_;
    double half_length_;
};

/// Symmetric grid on [-l, l] with endpoints exactly +-l.
std::vector<double> uniform_grid(double half_length, int nodes);

/// A radial function u(t) sampled on a grid of [-l, l], with its stencil
/// derivatives. The derivatives are recomputed from u on construction and
/// cannot be set independently.
class RadialProfile {
public:
    RadialProfile(std::vector<double> grid, std::vector<double> u);

    static RadialProfile sample(std::vector<double> grid, const std::function<double(double)>& fn);

    std::size_t size() const noexcept { return grid_.size(); }
    double half_length() const noexcept { return grid_.back(); }
    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> u() const noexcept { return u_; }
    std::span<const double> du() const noexcept { return du_; }
    std::span<const double> d2u() const noexcept { return d2u_; }

    RadialProfile with_values(std::vector<double> u) const;

private:
    std::vector<double> grid_;
    std::vector<double> u_;
    std::vector<double> du_;
    std::vector<double> d2u_;
};

/// Eigenvalues of W[u] on a round cylinder, node by node.
struct WEigenField {
    std::vector<symfun::EigenTuple> eigenvalues;
    /// Membership of each node in Gamma_t; empty unless a cone was supplied.
    std::vector<bool> in_cone;

    bool all_in_cone() const;
};

/// Schouten tensor eigenvalues of the round cylinder: (-1/2, 1/2, ..., 1/2).
symfun::EigenTuple schouten_base(const CylinderGeometry& geom);

/// Unsorted eigenvalues of W[u] for a radial u, axis entry first:
/// (u'' - (1 - u'^2)/2, (1 - u'^2)/2 repeated n-1 times).
std::vector<double> radial_eigenvalues(int n, double du, double d2u);

WEigenField w_eigen_radial(const CylinderGeometry& geom, const RadialProfile& profile);
WEigenField w_eigen_radial(const CylinderGeometry& geom, const RadialProfile& profile,
                           const symfun::SymFuncSpec& spec, double t);

/// W[u] = Hess u + du (x) du - |du|^2 g / 2 + A_g in a g-orthonormal frame.
/// The value of u itself does not enter.
Eigen::MatrixXd w_matrix_general(double u, const Eigen::VectorXd& du, const Eigen::MatrixXd& hess,
                                 const Eigen::MatrixXd& schouten);

/// A_g of the cylinder in the frame (d/dt, orthonormal frame of the sphere).
Eigen::MatrixXd cylinder_schouten_matrix(int n);

} // namespace yamabe::geometry
