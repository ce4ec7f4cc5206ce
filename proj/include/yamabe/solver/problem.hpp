#pragma once

#include "yamabe/geometry/cylinder.hpp"
#include "yamabe/symfun/symmetric_function.hpp"

#include <functional>
#include <optional>
#include <string>

namespace yamabe::solver {

/// psi(x, z, t) and its z-derivative. Most right-hand sides ignore t; the
/// manufactured ones use it to keep a fixed solution across the t-family.
struct RightHandSide {
    std::string name;
    std::function<double(double x, double z, double t)> value;
    std::function<double(double x, double z, double t)> dz;
};

/// f_t(lambda(W[u])) = psi(x, u) on (-l, l), u(-l) = phi_left, u(l) = phi_right.
class DirichletProblem {
public:
    /// Samples psi on a 21 x 21 grid of (x, z) over the working range (the
    /// boundary data and the subsolution, widened by 1) at t in {0, 1/2, 1}:
    /// psi must be positive, psi_z <= 1e-10, and the declared psi_z must match
    /// central differences. A subsolution must match phi within 1e-12.
    DirichletProblem(geometry::CylinderGeometry geom, symfun::SymFuncSpec spec, RightHandSide psi,
                     double phi_left, double phi_right,
                     std::optional<geometry::RadialProfile> subsolution = std::nullopt);

    const geometry::CylinderGeometry& geometry() const noexcept { return geom_; }
    const symfun::SymFuncSpec& spec() const noexcept { return spec_; }
    const RightHandSide& psi() const noexcept { return psi_; }
    double phi_left() const noexcept { return phi_left_; }
    double phi_right() const noexcept { return phi_right_; }
    const std::optional<geometry::RadialProfile>& subsolution() const noexcept { return subsolution_; }

private:
    geometry::CylinderGeometry geom_;
    symfun::SymFuncSpec spec_;
    RightHandSide psi_;
    double phi_left_;
    double phi_right_;
    std::optional<geometry::RadialProfile> subsolution_;
};

struct Monitors {
    double sup_u = 0.0;
    double sup_du = 0.0;
    double sup_d2u = 0.0;
};

/// Sup-norms of u and its stencil derivatives, end nodes included.
Monitors estimate_monitors(const geometry::RadialProfile& profile);

struct SubsolutionReport {
    std::vector<double> margin;             ///< f(lambda(W[u])) - psi at interior nodes, NaN outside the cone
    double min_margin = 0.0;
    double boundary_error = 0.0;            ///< max |u(+-l) - phi|
    std::vector<std::size_t> cone_violations;
    double min_cone_margin = 0.0;
    bool passed = false;
};

/// Checks f(lambda(W[u])) >= psi(x, u) - 1e-10 at interior nodes and the
/// boundary match. Cone violations are reported, not thrown.
SubsolutionReport check_subsolution(const DirichletProblem& problem);

} // namespace yamabe::solver
