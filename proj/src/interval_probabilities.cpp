#include "ivbs/interval_probabilities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ivbs/error.hpp"
#include "ivbs/random.hpp"

namespace ivbs {

IntervalProbabilities::IntervalProbabilities(Frame frame, std::vector<Interval> bounds)
    : frame_(std::move(frame)), bounds_(std::move(bounds))
{
    if (bounds_.size() != frame_.size()) {
        throw Error("interval probabilities need " + std::to_string(frame_.size()) +
                    " intervals, got " + std::to_string(bounds_.size()));
    }
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        if (bounds_[i].lo() < 0.0 || bounds_[i].hi() > 1.0) {
            throw Error("probability interval for '" + frame_.name(i) + "' leaves [0, 1]");
        }
    }
}

IntervalProbabilities IntervalProbabilities::point(Frame frame, std::span<const double> probabilities)
{
    std::vector<Interval> bounds;
    bounds.reserve(probabilities.size());
    for (double v : probabilities) {
        bounds.emplace_back(v);
    }
    return IntervalProbabilities(std::move(frame), std::move(bounds));
}

IntervalProbabilities IntervalProbabilities::vacuous(Frame frame)
{
    std::vector<Interval> bounds(frame.size(), Interval(0.0, 1.0));
    return IntervalProbabilities(std::move(frame), std::move(bounds));
}

double IntervalProbabilities::lower_sum() const noexcept
{
    double s = 0.0;
    for (const auto& b : bounds_) {
        s += b.lo();
    }
    return s;
}

double IntervalProbabilities::upper_sum() const noexcept
{
    double s = 0.0;
    for (const auto& b : bounds_) {
        s += b.hi();
    }
    return s;
}

bool IntervalProbabilities::point_valued() const noexcept
{
    return std::all_of(bounds_.begin(), bounds_.end(), [](const Interval& b) { return b.degenerate(); });
}

bool is_feasible(const IntervalProbabilities& p) noexcept
{
    return p.lower_sum() <= 1.0 + kSumTolerance && p.upper_sum() >= 1.0 - kSumTolerance;
}

double ignorance(const IntervalProbabilities& p, double alpha)
{
    if (!(alpha >= 1.0)) {
        throw Error("ignorance order alpha must be >= 1");
    }
    if (!is_feasible(p)) {
        throw Error("ignorance is defined for feasible interval probabilities only");
    }
    double total = 0.0;
    for (const auto& b : p.bounds()) {
        total += std::pow(b.width(), alpha);
    }
    return total / static_cast<double>(p.size());
}

std::vector<std::vector<double>> sample_feasible_points(const IntervalProbabilities& p,
                                                        std::size_t count, std::uint64_t seed)
{
    if (!is_feasible(p)) {
        throw Error("cannot sample from infeasible interval probabilities");
    }
    const std::size_t q = p.size();
    const auto bounds = p.bounds();
    Rng rng(seed);
    std::vector<std::size_t> order(q);
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> w(q);
        for (std::size_t i = 0; i < q; ++i) {
            w[i] = rng.uniform(bounds[i].lo(), bounds[i].hi());
        }
        // Fisher-Yates
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = q; i > 1; --i) {
            std::swap(order[i - 1], order[rng.below(i)]);
        }
        double residual = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
        for (std::size_t i : order) {
            if (residual > 0.0) {
                const double room = bounds[i].hi() - w[i];
                if (residual >= room) {
                    w[i] = bounds[i].hi();
                    residual -= room;
                } else {
                    w[i] += residual;
                    residual = 0.0;
                }
            } else if (residual < 0.0) {
                const double room = w[i] - bounds[i].lo();
                if (-residual >= room) {
                    w[i] = bounds[i].lo();
                    residual += room;
                } else {
                    w[i] += residual;
                    residual = 0.0;
                }
            }
        }
        // Absorb rounding drift on the coordinate with most room.
        residual = 1.0 - std::accumulate(w.begin(), w.end(), 0.0);
        std::size_t best = 0;
        double room = -1.0;
        for (std::size_t i = 0; i < q; ++i) {
            const double r = residual > 0.0 ? bounds[i].hi() - w[i] : w[i] - bounds[i].lo();
            if (r > room) {
                room = r;
                best = i;
            }
        }
        w[best] = std::clamp(w[best] + residual, bounds[best].lo(), bounds[best].hi());
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace ivbs
