#include "yamabe/solver/continuation.hpp"

#include <algorithm>
#include <cmath>

namespace yamabe::solver {

namespace {

ContinuationState solve_with_substeps(const DirichletProblem& problem, double t_from, double t_to,
                                      const geometry::RadialProfile& start, const ContinuationOptions& opts,
                                      int depth, int& substeps) {
    try {
        return newton_solve(problem, t_to, start, opts.newton);
    } catch (const std::exception&) {
        if (depth >= opts.max_substep_depth) throw;
    }
    const double mid = 0.5 * (t_from + t_to);
    ++substeps;
    const auto half = solve_with_substeps(problem, t_from, mid, start, opts, depth + 1, substeps);
    return solve_with_substeps(problem, mid, t_to, half.profile, opts, depth + 1, substeps);
}

} // namespace

std::vector<double> default_schedule() {
    std::vector<double> s;
    for (int i = 0; i <= 9; ++i) s.push_back(i / 10.0);
    for (double t : {0.95, 0.975, 0.99}) s.push_back(t);
    return s;
}

void ContinuationReport::summarize(double uniformity_factor) {
    auto ratio = [&](auto member) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& s : states) {
            lo = std::min(lo, s.monitors.*member);
            hi = std::max(hi, s.monitors.*member);
        }
        if (states.empty()) return 1.0;
        if (hi == 0.0) return 1.0;
        return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    };
    ratio_u = ratio(&Monitors::sup_u);
    ratio_du = ratio(&Monitors::sup_du);
    ratio_d2u = ratio(&Monitors::sup_d2u);
    uniform = ratio_u <= uniformity_factor && ratio_du <= uniformity_factor && ratio_d2u <= uniformity_factor;
    blowup_scaled.clear();
    for (const auto& s : states) blowup_scaled.push_back(s.monitors.sup_d2u * (1.0 - s.t));
}

ContinuationReport continuation_run(const DirichletProblem& problem, const std::vector<double>& schedule,
                                    const ContinuationOptions& opts,
                                    const std::optional<geometry::RadialProfile>& init) {
    if (schedule.empty()) throw ArgumentError("continuation_run: empty schedule");
    if (!(opts.t_max < 1.0)) throw ArgumentError("continuation_run: t_max must be below 1");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] >= 0.0 && schedule[i] <= opts.t_max))
            throw ArgumentError("continuation_run: schedule entry " + std::to_string(schedule[i]) +
                                " outside [0, t_max]");
        if (i > 0 && !(schedule[i] > schedule[i - 1]))
            throw ArgumentError("continuation_run: schedule must be strictly ascending");
    }
    if (!init && !problem.subsolution())
        throw ArgumentError("continuation_run: need an initial profile or a subsolution");

    ContinuationReport report;
    geometry::RadialProfile current = init ? *init : *problem.subsolution();
    std::optional<double> t_prev;
    for (double t : schedule) {
        try {
            int substeps = 0;
            auto state = t_prev ? solve_with_substeps(problem, *t_prev, t, current, opts, 0, substeps)
                                : newton_solve(problem, t, current, opts.newton);
            state.substeps = substeps;
            t_prev = t;
            if (opts.check_jacobian) {
                try {
                    state.jacobian_check = jacobian_mismatch(problem, t, state.profile);
                } catch (const ConeViolation&) {
                    // a difference step left the cone; leave the check unset
                }
            }
            current = state.profile;
            report.states.push_back(std::move(state));
        } catch (const std::exception& e) {
            report.summarize(opts.uniformity_factor);
            throw ContinuationError(e.what(), t, std::move(report));
        }
    }
    report.summarize(opts.uniformity_factor);
    return report;
}

} // namespace yamabe::solver
