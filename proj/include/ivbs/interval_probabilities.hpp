#ifndef IVBS_INTERVAL_PROBABILITIES_HPP
#define IVBS_INTERVAL_PROBABILITIES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ivbs/belief.hpp"
#include "ivbs/interval.hpp"

namespace ivbs {

// Per-hypothesis probability intervals [w_i^-, w_i^+] over a frame. This is
// both the estimation target and a generic interval distribution.
class IntervalProbabilities {
public:
    // Throws ivbs::Error unless there is one interval per hypothesis and
    // each satisfies 0 <= lo <= hi <= 1. Feasibility is not required here;
    // see is_feasible().
    IntervalProbabilities(Frame frame, std::vector<Interval> bounds);

    // Point-valued distribution; each probability must lie in [0, 1].
    static IntervalProbabilities point(Frame frame, std::span<const double> probabilities);
    // All intervals [0, 1].
    static IntervalProbabilities vacuous(Frame frame);

    const Frame& frame() const noexcept { return frame_; }
    std::span<const Interval> bounds() const noexcept { return bounds_; }
    const Interval& operator[](std::size_t i) const { return bounds_.at(i); }
    std::size_t size() const noexcept { return bounds_.size(); }
    double lower_sum() const noexcept;
    double upper_sum() const noexcept;
    bool point_valued() const noexcept;

    friend bool operator==(const IntervalProbabilities&, const IntervalProbabilities&) = default;

private:
    Frame frame_;
    std::vector<Interval> bounds_;
};

// Some w* inside the bounds sums to one, i.e. sum lo <= 1 <= sum hi within
// kSumTolerance.
bool is_feasible(const IntervalProbabilities& p) noexcept;

// alpha-th ignorance: mean over hypotheses of (w^+ - w^-)^alpha. Throws
// ivbs::Error for alpha < 1 or an infeasible p.
double ignorance(const IntervalProbabilities& p, double alpha);

// `count` point distributions inside p, each summing to one. A draw is
// uniform in the box; the deficit or surplus is then moved onto the
// coordinates one at a time in a random order, each absorbing as much as
// its remaining slack allows. Deterministic in (p, count, seed). Throws
// ivbs::Error when p is infeasible.
std::vector<std::vector<double>> sample_feasible_points(const IntervalProbabilities& p,
                                                        std::size_t count, std::uint64_t seed);

} // namespace ivbs

#endif
