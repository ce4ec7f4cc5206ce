#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace yamabe::symfun {

/// Eigenvalues of a symmetric tensor, always kept in ascending order.
class EigenTuple {
public:
    EigenTuple() = default;
    explicit EigenTuple(std::vector<double> values);
    EigenTuple(std::initializer_list<double> values);

    /// The all-ones vector e = (1, ..., 1).
    static EigenTuple ones(int n);

    int size() const noexcept { return static_cast<int>(values_.size()); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    EigenTuple scaled(double s) const;

    friend bool operator==(const EigenTuple&, const EigenTuple&) = default;

private:
    std::vector<double> values_;
};

double binomial(int n, int k);

/// k-th elementary symmetric function. sigma(lambda, 0) == 1.
/// Throws ArgumentError unless 0 <= k <= lambda.size().
double sigma(std::span<const double> lambda, int k);

/// All of sigma_0 .. sigma_kmax in one pass.
std::vector<double> sigma_all(std::span<const double> lambda, int kmax);

/// d sigma_k / d lambda_i = sigma_{k-1}(lambda with entry i removed).
std::vector<double> sigma_gradient(std::span<const double> lambda, int k);

double sum(std::span<const double> v);
double norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

} // namespace yamabe::symfun
