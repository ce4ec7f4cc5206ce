#pragma once

#include "yamabe/symfun/symmetric_function.hpp"

#include <Eigen/Dense>

namespace yamabe::symfun {

struct SpectralValue {
    double value = 0.0;
    Eigen::MatrixXd derivative;  ///< F_t^{ij} = dF_t / dW_{ij}, symmetric
    EigenTuple eigenvalues;
};

/// F_t(W) = f_t(lambda(W)) for a symmetric W, with its first derivative.
///
/// With W = Q diag(lambda) Q^T the derivative is Q diag(Df_t(lambda)) Q^T.
/// Symmetry of f makes Df_t agree on repeated eigenvalues, so the formula is
/// independent of the basis chosen inside an eigenspace.
SpectralValue matrix_F(const SymFuncSpec& spec, double t, const Eigen::MatrixXd& w);

} // namespace yamabe::symfun
