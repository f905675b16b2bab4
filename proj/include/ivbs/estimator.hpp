#ifndef IVBS_ESTIMATOR_HPP
#define IVBS_ESTIMATOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ivbs/belief.hpp"
#include "ivbs/interval.hpp"
#include "ivbs/interval_probabilities.hpp"

namespace ivbs {

struct EstimatorConfig {
    // Order of the ignorance penalty; must be >= 1.
    double alpha = 1.0;
    std::size_t restarts = 64;
    // Poll passes per restart before giving up.
    std::size_t max_iterations_per_start = 2000;
    // A poll step is accepted only if it improves the score by more than this.
    double convergence_tol = 1e-8;
    std::uint64_t seed = 42;
    double penalty_weight = 1e3;
    // Threads used for restarts; 0 means hardware concurrency. Never changes
    // the result.
    std::size_t workers = 1;
};

struct RestartDiagnostics {
    std::uint64_t seed;
    double best_objective;
    std::size_t iterations;
    std::size_t evaluations;
    // Step size fell below the minimum before the iteration budget ran out.
    bool converged;
};

struct EstimationDiagnostics {
    std::uint64_t seed;
    std::size_t best_restart;
    std::vector<RestartDiagnostics> restarts;

    bool converged() const noexcept { return restarts.at(best_restart).converged; }
};

struct EstimationResult {
    double alpha;
    IntervalProbabilities theta;
    // distance_term - ignorance
    double objective;
    Interval joint_likelihood;
    // I^alpha(theta)
    double ignorance;
    // I^1(theta), the mean interval width
    double ignorance_1;
    // D(L(m_I; theta), [0, 0])
    double distance_term;
    EstimationDiagnostics diagnostics;
};

// D(L(m_I; theta), [0, 0]) - I^alpha(theta). Throws ivbs::Error when theta
// is infeasible or alpha < 1.
double objective(const IntervalProbabilities& theta, const ObservationSet& observations, double alpha);

// Maximizes objective() over feasible interval probabilities.
//
// The parameter is searched as 2q box variables (lo_i, hi_i) in [0, 1].
// Every candidate is repaired before evaluation: each pair is ordered, lows
// are rescaled when their sum exceeds one, and highs are raised toward one
// when their sum falls short. Any residual violation costs
// penalty_weight * violation^2.
//
// Each restart runs a pattern search, halving the step from 0.25 down to
// 1e-6. Restart 0 starts from the uniform point distribution, restart 1
// from the vacuous all-[0, 1] parameter and the rest from seeded random
// boxes. The best restart wins, ties to the lowest index. The result is a
// pure function of (observations, config minus workers).
//
// Throws ivbs::Error for invalid observations or config.
EstimationResult estimate(const ObservationSet& observations, const EstimatorConfig& config);

// One estimate() per alpha, in input order. Row k runs with seed
// config.seed + k.
std::vector<EstimationResult> alpha_sweep(const ObservationSet& observations,
                                          std::span<const double> alphas,
                                          const EstimatorConfig& config);

} // namespace ivbs

#endif
