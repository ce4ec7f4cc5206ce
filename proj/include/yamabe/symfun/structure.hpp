#pragma once

#include "yamabe/symfun/symmetric_function.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace yamabe::symfun {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct StructureReport {
    std::string function;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    const CheckResult* find(const std::string& name) const;
};

/// Random interior point of Gamma_t (Gamma itself for t = 1): a Gaussian
/// cloud shifted along the diagonal, scaled log-uniformly, rejection sampled.
std::vector<double> sample_gamma_t_point(const SymFuncSpec& spec, double t, std::mt19937_64& rng);
inline std::vector<double> sample_cone_point(const SymFuncSpec& spec, std::mt19937_64& rng) {
    return sample_gamma_t_point(spec, 1.0, rng);
}

std::vector<double> random_unit_vector(int n, std::mt19937_64& rng);

/// Randomized check of the structural conditions on (f, Gamma): positivity and
/// vanishing at the boundary, positive and ordered gradient, midpoint
/// concavity, degree-one homogeneity, and the two consequences
/// sum_i d_i f >= f(e) and f <= sigma_1 f(e) / n.
StructureReport verify_structure(const SymFuncSpec& spec, int sample_count, std::uint64_t seed);

struct BallCase {
    double t = 0.0;
    double radius = 0.0;
    int outside = 0;            ///< directions whose ball point left Gamma_t
    int below_bound = 0;        ///< ball points with f_t < (1-t) f(e) / 2
    double corner_value = 0.0;  ///< f_t at the corner point of the ball
    double bound = 0.0;         ///< (1-t) f(e) / 2
    bool passed() const noexcept { return outside == 0 && below_bound == 0 && corner_value >= bound; }
};

/// The ball of radius 0.99 (1-t) / (2n) about (0,...,0,1) lies in Gamma_t and
/// f_t stays above (1-t) f(e) / 2 on it; checked along random directions.
std::vector<BallCase> verify_ball_inclusion(const SymFuncSpec& spec, std::span<const double> ts,
                                            int directions, std::uint64_t seed);

struct GuanSuiteReport {
    int samples = 0;
    long attempts = 0;
    double beta = 0.0;
    double min_eps = 0.0;
    double max_eps = 0.0;
    bool passed() const noexcept { return samples > 0 && min_eps > 0.0; }
};

/// Samples (t, mu, lambda) with mu in the closed ball of radius 1/2 about e and
/// normal separation above beta, and records the extreme values of guan_gap.
GuanSuiteReport guan_gap_suite(const SymFuncSpec& spec, int samples, double beta, std::uint64_t seed);

} // namespace yamabe::symfun
