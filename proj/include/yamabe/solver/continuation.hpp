#pragma once

#include "yamabe/solver/newton.hpp"

#include <optional>
#include <string>
#include <vector>

namespace yamabe::solver {

/// {0, 0.1, ..., 0.9, 0.95, 0.975, 0.99}
std::vector<double> default_schedule();

struct ContinuationOptions {
    NewtonOptions newton;
    double t_max = 0.999;
    /// Declared bound on max/min of each monitor across the schedule.
    double uniformity_factor = 2.0;
    /// Compare analytic and difference Jacobians at each converged state.
    bool check_jacobian = true;
    /// When a solve fails, retry through the midpoint of the t-step, at most
    /// this many nested times. Midpoint states only serve as warm starts.
    int max_substep_depth = 6;
};

struct ContinuationReport {
    std::vector<ContinuationState> states;
    /// max/min across the schedule of sup|u|, sup|u'|, sup|u''|.
    double ratio_u = 0.0;
    double ratio_du = 0.0;
    double ratio_d2u = 0.0;
    bool uniform = false;
    /// sup|u''_t| (1 - t) per state.
    std::vector<double> blowup_scaled;

    void summarize(double uniformity_factor);
};

/// A Newton solve failed part-way; the report holds the states reached so far.
class ContinuationError : public NumericalError {
public:
    ContinuationError(const std::string& what, double t, ContinuationReport partial)
        : NumericalError(what), t_(t), partial_(std::move(partial)) {}
    double failed_t() const noexcept { return t_; }
    const ContinuationReport& partial() const noexcept { return partial_; }

private:
    double t_;
    ContinuationReport partial_;
};

/// Solves along the schedule with warm starts. The first solve starts from
/// init, else from the problem's subsolution.
ContinuationReport continuation_run(const DirichletProblem& problem, const std::vector<double>& schedule,
                                    const ContinuationOptions& opts = {},
                                    const std::optional<geometry::RadialProfile>& init = std::nullopt);

} // namespace yamabe::solver
