#pragma once

#include "yamabe/symfun/elementary.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace yamabe::symfun {

enum class FunctionKind {
    sigma_root,      ///< sigma_k^{1/k} on Gamma_k
    quotient,        ///< (sigma_k / sigma_l)^{1/(k-l)} on Gamma_k
    sigma1_squared,  ///< sigma_1^2 on Gamma_1; not degree one, kept as a checker fixture
};

/// A symmetric function f together with its cone Gamma = Gamma_k.
///
/// Immutable after construction. Cone membership is tested with a relative
/// strictness margin: sigma_j(lambda) > margin * C(n, j) * max|lambda_i|^j for
/// every j <= k, so points within roundoff of the boundary count as outside.
class SymFuncSpec {
public:
    static SymFuncSpec sigma_root(int n, int k);
    static SymFuncSpec quotient(int n, int k, int l);
    static SymFuncSpec sigma1_squared(int n);

    SymFuncSpec with_margin(double margin) const;

    FunctionKind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    int l() const noexcept { return l_; }
    /// Order of the Garding cone: Gamma = Gamma_{cone_order()}.
    int cone_order() const noexcept { return kind_ == FunctionKind::sigma1_squared ? 1 : k_; }
    double margin() const noexcept { return margin_; }
    std::string name() const;

    /// f(e); C(n,k)^{1/k} for sigma_root.
    double value_at_ones() const;

private:
    SymFuncSpec(FunctionKind kind, int n, int k, int l);

    FunctionKind kind_;
    int n_;
    int k_;
    int l_;
    double margin_ = 1e-12;
};

/// Membership in the open cone Gamma_m of R^{lambda.size()} with relative margin.
bool garding_member(std::span<const double> lambda, int m, double margin);

bool cone_member(const SymFuncSpec& spec, std::span<const double> lambda);
inline bool cone_member(const SymFuncSpec& spec, const EigenTuple& lambda) {
    return cone_member(spec, lambda.values());
}

/// f and Df; throw DomainError outside the cone. Order of lambda is irrelevant.
double f_eval(const SymFuncSpec& spec, std::span<const double> lambda);
std::vector<double> f_grad(const SymFuncSpec& spec, std::span<const double> lambda);

/// t * lambda + (1 - t) * sigma_1(lambda) * e
std::vector<double> interpolate(double t, std::span<const double> lambda);

bool gamma_t_member(const SymFuncSpec& spec, double t, std::span<const double> lambda);
double ft_eval(const SymFuncSpec& spec, double t, std::span<const double> lambda);
std::vector<double> ft_grad(const SymFuncSpec& spec, double t, std::span<const double> lambda);

/// Unit normal Df_t / |Df_t| to the level set of f_t through lambda.
std::vector<double> normal_direction(const SymFuncSpec& spec, double t,
                                     std::span<const double> lambda);

/// Degree-one, scale-free measure of how far the interpolated point sits inside
/// Gamma: min_j (sigma_j / (C(n,j) max|.|^j))^{1/j}. Negative when outside.
double cone_margin(const SymFuncSpec& spec, double t, std::span<const double> lambda);

enum class GrowthType { bounded, unbounded };

struct TypeClassification {
    int cone_type = 0;            ///< 1 if the positive axes lie on the boundary, 2 otherwise
    GrowthType f_type = GrowthType::unbounded;
    int numerical_cone_type = 0;  ///< from the axis membership probe
    GrowthType numerical_f_type = GrowthType::unbounded;
    double growth_ratio = 0.0;    ///< f(e', 1e10) / f(e', 1e2)
    bool consistent() const noexcept {
        return cone_type == numerical_cone_type && f_type == numerical_f_type;
    }
};

TypeClassification classify_type(const SymFuncSpec& spec);

/// Smallest R (to bisection precision) with f(lambda_1, ..., lambda_n + R) >= level
/// for every lambda in the sample. Requires f of unbounded type.
double growth_radius(const SymFuncSpec& spec, std::span<const EigenTuple> sample, double level);

/// lim_{s -> inf} f(lambda', s) for bounded-type f.
double f_infinity(const SymFuncSpec& spec, std::span<const double> lambda_prime);

/// Largest eps >= 0 for which
///   Df_t(lambda).(mu - lambda) >= f_t(mu) - f_t(lambda) + eps (sum_i d_i f_t(lambda) + 1)
/// holds, returned only when the unit normals at mu and lambda differ by more than beta.
std::optional<double> guan_gap(const SymFuncSpec& spec, double t, std::span<const double> mu,
                               std::span<const double> lambda, double beta);

} // namespace yamabe::symfun
