#include "yamabe/solver/problem.hpp"

#include "yamabe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace yamabe::solver {

DirichletProblem::DirichletProblem(geometry::CylinderGeometry geom, symfun::SymFuncSpec spec, RightHandSide psi,
                                   double phi_left, double phi_right,
                                   std::optional<geometry::RadialProfile> subsolution)
    : geom_(geom), spec_(std::move(spec)), psi_(std::move(psi)), phi_left_(phi_left), phi_right_(phi_right),
      subsolution_(std::move(subsolution)) {
    if (spec_.n() != geom_.n())
        throw ArgumentError("DirichletProblem: function dimension " + std::to_string(spec_.n()) +
                            " does not match the cylinder dimension " + std::to_string(geom_.n()));
    if (!psi_.value || !psi_.dz) throw ArgumentError("DirichletProblem: psi needs value and dz");
    if (!std::isfinite(phi_left_) || !std::isfinite(phi_right_))
        throw ArgumentError("DirichletProblem: boundary values must be finite");

    double zlo = std::min(phi_left_, phi_right_), zhi = std::max(phi_left_, phi_right_);
    if (subsolution_) {
        const auto& s = *subsolution_;
        if (std::abs(s.half_length() - geom_.half_length()) > 1e-12 * std::max(1.0, geom_.half_length()))
            throw ArgumentError("DirichletProblem: subsolution grid does not span the cylinder");
        const double err = std::max(std::abs(s.u().front() - phi_left_), std::abs(s.u().back() - phi_right_));
        if (err > 1e-12)
            throw ArgumentError("DirichletProblem: subsolution misses the boundary data by " + std::to_string(err));
        for (double v : s.u()) {
            zlo = std::min(zlo, v);
            zhi = std::max(zhi, v);
        }
    }
    zlo -= 1.0;
    zhi += 1.0;

    const double l = geom_.half_length();
    for (double t : {0.0, 0.5, 1.0}) {
        for (int a = 0; a <= 20; ++a) {
            const double x = -l + 2.0 * l * a / 20.0;
            for (int b = 0; b <= 20; ++b) {
                const double z = zlo + (zhi - zlo) * b / 20.0;
                const double v = psi_.value(x, z, t);
                if (!(v > 0.0))
                    throw ArgumentError("DirichletProblem: psi (" + psi_.name + ") is not positive at x = " +
                                        std::to_string(x) + ", z = " + std::to_string(z));
                const double dz = psi_.dz(x, z, t);
                if (!(dz <= 1e-10))
                    throw ArgumentError("DirichletProblem: psi_z > 0 at x = " + std::to_string(x) +
                                        ", z = " + std::to_string(z));
                const double h = 1e-5 * (1.0 + std::abs(z));
                const double fd = (psi_.value(x, z + h, t) - psi_.value(x, z - h, t)) / (2.0 * h);
                if (std::abs(fd - dz) > 1e-5 * (std::abs(dz) + std::abs(v)))
                    throw ArgumentError("DirichletProblem: declared psi_z disagrees with differences at x = " +
                                        std::to_string(x) + ", z = " + std::to_string(z));
            }
        }
    }
}

Monitors estimate_monitors(const geometry::RadialProfile& profile) {
    Monitors m;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        m.sup_u = std::max(m.sup_u, std::abs(profile.u()[i]));
        m.sup_du = std::max(m.sup_du, std::abs(profile.du()[i]));
        m.sup_d2u = std::max(m.sup_d2u, std::abs(profile.d2u()[i]));
    }
    return m;
}

SubsolutionReport check_subsolution(const DirichletProblem& problem) {
    if (!problem.subsolution()) throw ArgumentError("check_subsolution: problem has no subsolution");
    const auto& s = *problem.subsolution();
    const auto& spec = problem.spec();
    const int n = problem.geometry().n();
    const std::size_t N = s.size();

    SubsolutionReport rep;
    rep.margin.assign(N, 0.0);
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.min_cone_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const auto lam = geometry::radial_eigenvalues(n, s.du()[i], s.d2u()[i]);
        rep.min_cone_margin = std::min(rep.min_cone_margin, symfun::cone_margin(spec, 1.0, lam));
        if (!symfun::cone_member(spec, lam)) {
            rep.cone_violations.push_back(i);
            rep.margin[i] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        rep.margin[i] = symfun::f_eval(spec, lam) - problem.psi().value(s.grid()[i], s.u()[i], 1.0);
        rep.min_margin = std::min(rep.min_margin, rep.margin[i]);
    }
    rep.boundary_error = std::max(std::abs(s.u().front() - problem.phi_left()),
                                  std::abs(s.u().back() - problem.phi_right()));
    rep.passed = rep.cone_violations.empty() && rep.min_margin >= -1e-10 && rep.boundary_error <= 1e-12;
    return rep;
}

} // namespace yamabe::solver
