#include "yamabe/geometry/cylinder.hpp"

#include "yamabe/errors.hpp"
#include "yamabe/geometry/stencil.hpp"

#include <algorithm>
#include <string>

namespace yamabe::geometry {

CylinderGeometry::CylinderGeometry(int n, double half_length) : n_(n), half_length_(half_length) {
    if (n < 3) throw ArgumentError("CylinderGeometry: dimension must be at least 3");
    if (!(half_length > 0.0)) throw ArgumentError("CylinderGeometry: half length must be positive");
}

std::vector<double> uniform_grid(double half_length, int nodes) {
    if (nodes < 4) throw ArgumentError("uniform_grid: need at least 4 nodes");
    if (!(half_length > 0.0)) throw ArgumentError("uniform_grid: half length must be positive");
    std::vector<double> x(static_cast<std::size_t>(nodes));
    const int m = nodes - 1;
    for (int i = 0; i <= m; ++i) x[i] = half_length * static_cast<double>(2 * i - m) / m;
    return x;
}

RadialProfile::RadialProfile(std::vector<double> grid, std::vector<double> u)
    : grid_(std::move(grid)), u_(std::move(u)) {
    if (grid_.size() != u_.size()) throw ArgumentError("RadialProfile: grid and values differ in size");
    if (grid_.size() < 4) throw ArgumentError("RadialProfile: need at least 4 nodes");
    for (std::size_t i = 1; i < grid_.size(); ++i)
        if (!(grid_[i] > grid_[i - 1])) throw ArgumentError("RadialProfile: grid must be strictly increasing");
    if (grid_.front() != -grid_.back())
        throw ArgumentError("RadialProfile: grid must span a symmetric interval [-l, l]");
    const auto stencils = build_stencils(grid_);
    du_.resize(u_.size());
    d2u_.resize(u_.size());
    for (std::size_t i = 0; i < u_.size(); ++i) {
        const auto& s = stencils[i];
        // Derivative weights sum to zero; differencing against u_i first keeps
        // the rounding error relative to the increments, not to |u|.
        double a = 0.0, b = 0.0;
        for (std::size_t j = 0; j < s.d1.size(); ++j) {
            const double du = u_[s.first + j] - u_[i];
            a += s.d1[j] * du;
            b += s.d2[j] * du;
        }
        du_[i] = a;
        d2u_[i] = b;
    }
}

RadialProfile RadialProfile::sample(std::vector<double> grid, const std::function<double(double)>& fn) {
    std::vector<double> u(grid.size());
    std::transform(grid.begin(), grid.end(), u.begin(), fn);
    return RadialProfile(std::move(grid), std::move(u));
}

RadialProfile RadialProfile::with_values(std::vector<double> u) const {
    return RadialProfile(grid_, std::move(u));
}

bool WEigenField::all_in_cone() const {
    return !in_cone.empty() && std::all_of(in_cone.begin(), in_cone.end(), [](bool b) { return b; });
}

symfun::EigenTuple schouten_base(const CylinderGeometry& geom) {
    std::vector<double> v(static_cast<std::size_t>(geom.n()), 0.5);
    v.front() = -0.5;
    return symfun::EigenTuple(std::move(v));
}

std::vector<double> radial_eigenvalues(int n, double du, double d2u) {
    const double b = 0.5 * (1.0 - du * du);
    std::vector<double> v(static_cast<std::size_t>(n), b);
    v.front() = d2u - b;
    return v;
}

WEigenField w_eigen_radial(const CylinderGeometry& geom, const RadialProfile& profile) {
    WEigenField field;
    field.eigenvalues.reserve(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i)
        field.eigenvalues.emplace_back(radial_eigenvalues(geom.n(), profile.du()[i], profile.d2u()[i]));
    return field;
}

WEigenField w_eigen_radial(const CylinderGeometry& geom, const RadialProfile& profile,
                           const symfun::SymFuncSpec& spec, double t) {
    if (spec.n() != geom.n()) throw ArgumentError("w_eigen_radial: dimension mismatch");
    WEigenField field = w_eigen_radial(geom, profile);
    field.in_cone.reserve(profile.size());
    for (const auto& lam : field.eigenvalues)
        field.in_cone.push_back(symfun::gamma_t_member(spec, t, lam.values()));
    return field;
}

Eigen::MatrixXd w_matrix_general(double /*u*/, const Eigen::VectorXd& du, const Eigen::MatrixXd& hess,
                                 const Eigen::MatrixXd& schouten) {
    const auto n = du.size();
    if (hess.rows() != n || hess.cols() != n || schouten.rows() != n || schouten.cols() != n)
        throw ArgumentError("w_matrix_general: inconsistent dimensions");
    Eigen::MatrixXd w = hess + du * du.transpose() + schouten;
    w.diagonal().array() -= 0.5 * du.squaredNorm();
    return 0.5 * (w + w.transpose());
}

Eigen::MatrixXd cylinder_schouten_matrix(int n) {
    Eigen::MatrixXd a = 0.5 * Eigen::MatrixXd::Identity(n, n);
    a(0, 0) = -0.5;
    return a;
}

} // namespace yamabe::geometry
