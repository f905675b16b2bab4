#ifndef IVBS_LIKELIHOOD_HPP
#define IVBS_LIKELIHOOD_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "ivbs/belief.hpp"
#include "ivbs/interval.hpp"
#include "ivbs/interval_probabilities.hpp"

namespace ivbs {

enum class LikelihoodSource { Singleton, Subset, Observation, Joint };

// A likelihood value in [0, 1] together with what produced it.
struct LikelihoodInterval {
    Interval value;
    LikelihoodSource source;
    // Set for Observation; index into the ObservationSet when known.
    std::optional<std::size_t> observation;
};

enum class Bound { Lower, Upper };

// Certificate for one side of the inner program: the optimal mass
// assignment and the chosen per-focal-element likelihoods.
struct InnerProgramSolution {
    Bound bound;
    double objective_value;
    std::vector<double> mass;
    std::vector<double> likelihood_choice;
};

struct ObservationLikelihood {
    LikelihoodInterval likelihood;
    InnerProgramSolution lower;
    InnerProgramSolution upper;
};

// [theta_h^-, theta_h^+]. Throws ivbs::Error for a bad index or an
// infeasible theta.
LikelihoodInterval singleton_likelihood(std::size_t hypothesis, const IntervalProbabilities& theta);

// Bounds on P(F) over the credal set of theta:
//   lo = max(sum_{H in F} theta^-, 1 - sum_{H not in F} theta^+)
//   hi = min(sum_{H in F} theta^+, 1 - sum_{H not in F} theta^-)
LikelihoodInterval subset_likelihood(const FocalElement& focal, const IntervalProbabilities& theta);

// min / max of sum_i m_i L*_i over a_i <= m_i <= b_i, sum m_i = 1 and
// L*_i in subset_likelihood(F_i). Masses are non-negative, so the optimal
// L*_i is the lower (upper) endpoint; the remaining LP in m is a bounded
// transportation problem solved greedily: start at m = a, then hand the
// residual 1 - sum a to the cheapest (dearest) focal elements first,
// saturating each at b_i. Ties go to the lower focal-element index.
//
// Throws ivbs::Error when the mass box is empty (sum a > 1 or sum b < 1)
// or theta is infeasible.
ObservationLikelihood ibs_likelihood(const IntervalBeliefStructure& observation,
                                     const IntervalProbabilities& theta);

// Independent check of ibs_likelihood: enumerates every vertex of
// {sum m = 1, a <= m <= b} and a grid of `grid_depth` steps per coordinate
// over the same polytope, each against all 2^n endpoint choices of L*.
// Limited to n <= 5 focal elements.
Interval ibs_likelihood_bruteforce(const IntervalBeliefStructure& observation,
                                   const IntervalProbabilities& theta, std::size_t grid_depth);

// Bound-wise product of the observation likelihoods, in observation order.
LikelihoodInterval joint_likelihood(const ObservationSet& observations,
                                    const IntervalProbabilities& theta);

} // namespace ivbs

#endif
