#include "doctest.h"

#include "yamabe/errors.hpp"
#include "yamabe/symfun/matrix_function.hpp"
#include "yamabe/symfun/structure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

using namespace yamabe;
using namespace yamabe::symfun;

namespace {

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    return qr.householderQ();
}

Eigen::MatrixXd with_spectrum(const std::vector<double>& lam, const Eigen::MatrixXd& q) {
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(lam.data(), static_cast<Eigen::Index>(lam.size()));
    return q * d.asDiagonal() * q.transpose();
}

} // namespace

TEST_CASE("diagonal matrices reduce to f_t of the sorted diagonal") {
    const auto spec = SymFuncSpec::sigma_root(4, 2);
    Eigen::MatrixXd w = Eigen::Vector4d(2.0, 0.5, 1.0, -0.2).asDiagonal();
    for (double t : {0.0, 0.5, 1.0}) {
        const auto r = matrix_F(spec, t, w);
        CHECK(r.value == doctest::Approx(ft_eval(spec, t, std::vector<double>{-0.2, 0.5, 1.0, 2.0})).epsilon(1e-14));
        CHECK(r.eigenvalues[0] == doctest::Approx(-0.2));
    }
    CHECK_THROWS_AS(matrix_F(spec, 1.0, -Eigen::MatrixXd::Identity(4, 4)), DomainError);
    CHECK_THROWS_AS(matrix_F(spec, 1.0, Eigen::MatrixXd::Identity(3, 3)), ArgumentError);
}

TEST_CASE("orthogonal invariance and identity sum F^ij W_il W_jl") {
    std::mt19937_64 rng(37);
    for (const auto& spec : {SymFuncSpec::sigma_root(4, 3), SymFuncSpec::quotient(5, 3, 2)}) {
        const int n = spec.n();
        for (int s = 0; s < 100; ++s) {
            const double t = (s % 5) * 0.25;
            const auto lam = sample_gamma_t_point(spec, t, rng);
            const Eigen::MatrixXd w = with_spectrum(lam, random_orthogonal(n, rng));
            const auto r = matrix_F(spec, t, w);
            const Eigen::MatrixXd q = random_orthogonal(n, rng);
            CHECK(std::abs(matrix_F(spec, t, q * w * q.transpose()).value - r.value) <=
                  1e-10 * std::max(1.0, r.value));

            const double lhs = (r.derivative.array() * (w * w.transpose()).array()).sum();
            const auto g = ft_grad(spec, t, lam);
            double rhs = 0.0;
            for (int i = 0; i < n; ++i) rhs += g[i] * lam[i] * lam[i];
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("derivative agrees with finite differences, including repeated eigenvalues") {
    std::mt19937_64 rng(41);
    const auto spec = SymFuncSpec::sigma_root(4, 2);
    const std::vector<std::vector<double>> spectra{{0.3, 0.8, 1.4, 2.1}, {1.0, 1.0, 2.0, 3.0}, {1, 1, 1, 1}};
    for (const auto& lam : spectra) {
        for (double t : {0.2, 1.0}) {
            const Eigen::MatrixXd w = with_spectrum(lam, random_orthogonal(4, rng));
            const auto r = matrix_F(spec, t, w);
            const double h = 1e-6;
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) {
                    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(4, 4);
                    e(i, j) += 1.0;
                    e(j, i) += 1.0;
                    const double fd = (matrix_F(spec, t, w + h * e).value - matrix_F(spec, t, w - h * e).value) / (2 * h);
                    const double an = i == j ? 2.0 * r.derivative(i, i) : 2.0 * r.derivative(i, j);
                    CHECK(std::abs(fd - an) <= 1e-7);
                }
            CHECK((r.derivative - r.derivative.transpose()).norm() <= 1e-14);
        }
    }
}
