#include "ivbs/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ivbs/error.hpp"

namespace ivbs {

namespace {

// Eq. 4 results may drift outside [0, 1] by rounding only.
constexpr double kClampTolerance = 1e-9;

void require_feasible(const IntervalProbabilities& theta)
{
    if (!is_feasible(theta)) {
        throw Error("parameter interval probabilities are infeasible");
    }
}

void require_same_frame(const Frame& a, const Frame& b)
{
    if (!(a == b)) {
        throw Error("observation and parameter use different frames");
    }
}

double clamp_unit(double v)
{
    if (v < -kClampTolerance || v > 1.0 + kClampTolerance) {
        throw std::logic_error("subset likelihood bound far outside [0, 1]");
    }
    return std::clamp(v, 0.0, 1.0);
}

Interval subset_bounds(const FocalElement& focal, const IntervalProbabilities& theta)
{
    double in_lo = 0.0;
    double in_hi = 0.0;
    double out_lo = 0.0;
    double out_hi = 0.0;
    const auto bounds = theta.bounds();
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (focal.contains(i)) {
            in_lo += bounds[i].lo();
            in_hi += bounds[i].hi();
        } else {
            out_lo += bounds[i].lo();
            out_hi += bounds[i].hi();
        }
    }
    double lo = std::max(in_lo, 1.0 - out_hi);
    double hi = std::min(in_hi, 1.0 - out_lo);
    lo = clamp_unit(lo);
    hi = clamp_unit(hi);
    if (lo > hi) {
        if (lo - hi > kClampTolerance) {
            throw std::logic_error("subset likelihood bounds crossed for feasible parameter");
        }
        lo = hi = 0.5 * (lo + hi);
    }
    return Interval(lo, hi);
}

InnerProgramSolution solve_inner(const IntervalBeliefStructure& observation,
                                 std::vector<double> coefficients, Bound bound)
{
    const auto entries = observation.entries();
    const std::size_t n = entries.size();
    std::vector<double> mass(n);
    double residual = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        mass[i] = entries[i].lower;
        residual -= entries[i].lower;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (bound == Bound::Lower) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return coefficients[x] < coefficients[y]; });
    } else {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return coefficients[x] > coefficients[y]; });
    }
    for (std::size_t i : order) {
        if (residual <= 0.0) {
            break;
        }
        const double room = entries[i].upper - entries[i].lower;
        if (residual >= room) {
            mass[i] = entries[i].upper;
            residual -= room;
        } else {
            mass[i] += residual;
            residual = 0.0;
        }
    }
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        value += mass[i] * coefficients[i];
    }
    return {bound, value, std::move(mass), std::move(coefficients)};
}

} // namespace

LikelihoodInterval singleton_likelihood(std::size_t hypothesis, const IntervalProbabilities& theta)
{
    if (hypothesis >= theta.size()) {
        throw Error("hypothesis index " + std::to_string(hypothesis) + " out of range");
    }
    require_feasible(theta);
    return {theta[hypothesis], LikelihoodSource::Singleton, std::nullopt};
}

LikelihoodInterval subset_likelihood(const FocalElement& focal, const IntervalProbabilities& theta)
{
    if (focal.frame_size() != theta.size()) {
        throw Error("focal element and parameter use different frames");
    }
    require_feasible(theta);
    return {subset_bounds(focal, theta), LikelihoodSource::Subset, std::nullopt};
}

ObservationLikelihood ibs_likelihood(const IntervalBeliefStructure& observation,
                                     const IntervalProbabilities& theta)
{
    require_same_frame(observation.frame(), theta.frame());
    require_feasible(theta);
    if (observation.lower_sum() > 1.0 + kSumTolerance || observation.upper_sum() < 1.0 - kSumTolerance) {
        throw Error("observation mass box admits no assignment summing to one");
    }
    const auto entries = observation.entries();
    std::vector<double> lower_coeff;
    std::vector<double> upper_coeff;
    lower_coeff.reserve(entries.size());
    upper_coeff.reserve(entries.size());
    for (const auto& e : entries) {
        const Interval b = subset_bounds(e.focal, theta);
        lower_coeff.push_back(b.lo());
        upper_coeff.push_back(b.hi());
    }
    auto lower = solve_inner(observation, std::move(lower_coeff), Bound::Lower);
    auto upper = solve_inner(observation, std::move(upper_coeff), Bound::Upper);
    const double lo = std::clamp(lower.objective_value, 0.0, 1.0);
    const double hi = std::clamp(std::max(upper.objective_value, lo), 0.0, 1.0);
    return {{Interval(lo, hi), LikelihoodSource::Observation, std::nullopt},
            std::move(lower),
            std::move(upper)};
}

Interval ibs_likelihood_bruteforce(const IntervalBeliefStructure& observation,
                                   const IntervalProbabilities& theta, std::size_t grid_depth)
{
    constexpr std::size_t kMaxFocal = 5;
    require_same_frame(observation.frame(), theta.frame());
    require_feasible(theta);
    const auto entries = observation.entries();
    const std::size_t n = entries.size();
    if (n > kMaxFocal) {
        throw Error("brute-force inner program limited to " + std::to_string(kMaxFocal) +
                    " focal elements");
    }
    if (grid_depth == 0) {
        throw Error("grid depth must be positive");
    }

    std::vector<double> lik_lo(n);
    std::vector<double> lik_hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Interval b = subset_likelihood(entries[i].focal, theta).value;
        lik_lo[i] = b.lo();
        lik_hi[i] = b.hi();
    }

    double best_min = INFINITY;
    double best_max = -INFINITY;
    std::vector<double> m(n);
    auto evaluate = [&](const std::vector<double>& mass) {
        for (std::size_t choice = 0; choice < (std::size_t{1} << n); ++choice) {
            double v = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                v += mass[i] * ((choice >> i) & 1U ? lik_hi[i] : lik_lo[i]);
            }
            best_min = std::min(best_min, v);
            best_max = std::max(best_max, v);
        }
    };

    // Each candidate fixes every coordinate except `free_index` on a grid
    // level (levels 0 and grid_depth are the box bounds, i.e. the vertices)
    // and solves the equality for the free coordinate.
    constexpr double kSlack = 1e-12;
    const std::size_t levels = grid_depth + 1;
    std::size_t combos = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        combos *= levels;
    }
    for (std::size_t free_index = 0; free_index < n; ++free_index) {
        for (std::size_t code = 0; code < combos; ++code) {
            std::size_t c = code;
            double fixed_sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == free_index) {
                    continue;
                }
                const std::size_t level = c % levels;
                c /= levels;
                const double t = static_cast<double>(level) / static_cast<double>(grid_depth);
                m[i] = level == grid_depth ? entries[i].upper
                                           : entries[i].lower + t * (entries[i].upper - entries[i].lower);
                fixed_sum += m[i];
            }
            const double rest = 1.0 - fixed_sum;
            if (rest < entries[free_index].lower - kSlack || rest > entries[free_index].upper + kSlack) {
                continue;
            }
            m[free_index] = rest;
            evaluate(m);
        }
    }
    if (!(best_min <= best_max)) {
        throw Error("observation mass box admits no assignment summing to one");
    }
    return Interval(std::clamp(best_min, 0.0, 1.0), std::clamp(best_max, 0.0, 1.0));
}

LikelihoodInterval joint_likelihood(const ObservationSet& observations, const IntervalProbabilities& theta)
{
    Interval joint(1.0);
    for (const auto& obs : observations.observations()) {
        joint = product(joint, ibs_likelihood(obs, theta).likelihood.value);
    }
    return {joint, LikelihoodSource::Joint, std::nullopt};
}

} // namespace ivbs
