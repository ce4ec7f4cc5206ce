#include "yamabe/symfun/matrix_function.hpp"

#include "yamabe/errors.hpp"

#include <string>

namespace yamabe::symfun {

SpectralValue matrix_F(const SymFuncSpec& spec, double t, const Eigen::MatrixXd& w) {
    if (w.rows() != spec.n() || w.cols() != spec.n())
        throw ArgumentError("matrix_F: expected a " + std::to_string(spec.n()) + "x" +
                            std::to_string(spec.n()) + " matrix");
    const Eigen::MatrixXd sym = 0.5 * (w + w.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    if (eig.info() != Eigen::Success) throw NumericalError("matrix_F: eigen decomposition failed");

    const Eigen::VectorXd& lam = eig.eigenvalues();  // ascending
    std::vector<double> lambda(lam.data(), lam.data() + lam.size());
    if (!gamma_t_member(spec, t, lambda)) throw DomainError("matrix_F: spectrum outside Gamma_t");

    SpectralValue out;
    out.value = ft_eval(spec, t, lambda);
    const auto g = ft_grad(spec, t, lambda);
    const Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(g.size()));
    const Eigen::MatrixXd& q = eig.eigenvectors();
    out.derivative = q * gv.asDiagonal() * q.transpose();
    out.eigenvalues = EigenTuple(std::move(lambda));
    return out;
}

} // namespace yamabe::symfun
