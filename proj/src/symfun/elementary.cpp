#include "yamabe/symfun/elementary.hpp"

#include "yamabe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace yamabe::symfun {

EigenTuple::EigenTuple(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
}

EigenTuple::EigenTuple(std::initializer_list<double> values)
    : EigenTuple(std::vector<double>(values)) {}

EigenTuple EigenTuple::ones(int n) {
    return EigenTuple(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

EigenTuple EigenTuple::scaled(double s) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= s;
    return EigenTuple(std::move(v));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

std::vector<double> sigma_all(std::span<const double> lambda, int kmax) {
    const int n = static_cast<int>(lambda.size());
    if (kmax < 0 || kmax > n)
        throw ArgumentError("sigma: order " + std::to_string(kmax) + " outside [0, " +
                            std::to_string(n) + "]");
    // Expand prod_i (1 + lambda_i x) coefficient by coefficient.
    std::vector<double> e(static_cast<std::size_t>(kmax) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i) {
        const int top = std::min(i + 1, kmax);
        for (int j = top; j >= 1; --j) e[j] += lambda[i] * e[j - 1];
    }
    return e;
}

double sigma(std::span<const double> lambda, int k) {
    return sigma_all(lambda, k).back();
}

std::vector<double> sigma_gradient(std::span<const double> lambda, int k) {
    const int n = static_cast<int>(lambda.size());
    if (k < 0 || k > n)
        throw ArgumentError("sigma_gradient: order " + std::to_string(k) + " outside [0, " +
                            std::to_string(n) + "]");
    std::vector<double> grad(lambda.size(), 0.0);
    if (k == 0) return grad;
    std::vector<double> rest;
    rest.reserve(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        rest.clear();
        for (std::size_t j = 0; j < lambda.size(); ++j)
            if (j != i) rest.push_back(lambda[j]);
        grad[i] = sigma(rest, k - 1);
    }
    return grad;
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

} // namespace yamabe::symfun
