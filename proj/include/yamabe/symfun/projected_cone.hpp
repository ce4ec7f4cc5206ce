#pragma once

#include "yamabe/symfun/symmetric_function.hpp"

#include <span>
#include <vector>

namespace yamabe::symfun {

/// Projection Gamma' of Gamma = Gamma_k onto the first n-1 coordinates.
///
/// For k >= 2 this is the Garding cone Gamma_{k-1} of R^{n-1}; for k = 1 it is
/// all of R^{n-1}. The identification is checked on random samples at
/// construction: (lambda', s) must lie in Gamma for large s exactly when
/// lambda' lies in the identified cone.
class ProjectedCone {
public:
    explicit ProjectedCone(const SymFuncSpec& parent);

    const SymFuncSpec& parent() const noexcept { return parent_; }
    int dim() const noexcept { return parent_.n() - 1; }
    /// Order m of Gamma' = Gamma_m; 0 means the whole space.
    int order() const noexcept { return parent_.cone_order() - 1; }
    bool is_whole_space() const noexcept { return order() == 0; }

    bool contains(std::span<const double> lambda_prime) const;
    /// Closure test with a relative tolerance on each sigma_j.
    bool in_closure(std::span<const double> lambda_prime, double tol = 1e-9) const;

    /// Outward-facing unit normal gamma of a supporting hyperplane at a boundary
    /// point; gamma has non-negative entries and gamma . lambda0' = 0.
    std::vector<double> supporting_normal(std::span<const double> boundary_point) const;

    /// Distance r along the unit direction v at which lambda' + r v leaves the
    /// cone. Requires an interior start; infinite when the ray never leaves.
    double ray_exit(std::span<const double> lambda_prime, std::span<const double> v) const;

    /// Last point outside the cone on the ray (within bisection precision).
    std::vector<double> boundary_point_on_ray(std::span<const double> lambda_prime,
                                              std::span<const double> v) const;

private:
    SymFuncSpec parent_;
};

/// Euclidean distance from lambda' to the boundary of Gamma'.
///
/// Zero on the boundary, +inf when Gamma' is the whole space. Computed by
/// iterating ray exits along the inward normal of the current boundary
/// point; each step can only shorten the distance, and the fixed point is the
/// nearest boundary point. Throws DomainError outside the closure.
double dist_projected_cone(const ProjectedCone& pc, std::span<const double> lambda_prime);

} // namespace yamabe::symfun
