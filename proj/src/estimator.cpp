#include "ivbs/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ivbs/error.hpp"
#include "ivbs/likelihood.hpp"
#include "ivbs/random.hpp"

namespace ivbs {

namespace {

constexpr double kInitialStep = 0.25;
constexpr double kMinimumStep = 1e-6;

// Packed parameter: x[2i] = lo_i, x[2i + 1] = hi_i.
using Point = std::vector<double>;

struct Repaired {
    Point x;
    double violation;
};

Repaired repair(Point x)
{
    const std::size_t q = x.size() / 2;
    double lo_sum = 0.0;
    double hi_sum = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        double& lo = x[2 * i];
        double& hi = x[2 * i + 1];
        lo = std::clamp(lo, 0.0, 1.0);
        hi = std::clamp(hi, 0.0, 1.0);
        if (lo > hi) {
            std::swap(lo, hi);
        }
        lo_sum += lo;
        hi_sum += hi;
    }
    if (lo_sum > 1.0) {
        for (std::size_t i = 0; i < q; ++i) {
            x[2 * i] /= lo_sum;
        }
    }
    if (hi_sum < 1.0) {
        double room = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            room += 1.0 - x[2 * i + 1];
        }
        const double t = (1.0 - hi_sum) / room;
        for (std::size_t i = 0; i < q; ++i) {
            x[2 * i + 1] = std::min(1.0, x[2 * i + 1] + t * (1.0 - x[2 * i + 1]));
        }
    }
    lo_sum = 0.0;
    hi_sum = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        lo_sum += x[2 * i];
        hi_sum += x[2 * i + 1];
    }
    const double violation = std::max(0.0, lo_sum - 1.0) + std::max(0.0, 1.0 - hi_sum);
    return {std::move(x), violation};
}

IntervalProbabilities unpack(const Frame& frame, const Point& x)
{
    std::vector<Interval> bounds;
    bounds.reserve(x.size() / 2);
    for (std::size_t i = 0; i + 1 < x.size(); i += 2) {
        bounds.emplace_back(x[i], x[i + 1]);
    }
    return IntervalProbabilities(frame, std::move(bounds));
}

// Poll directions over the packed parameter: single bounds, whole-interval
// shifts, widening, and mass transfers between hypotheses (whole interval,
// lows only, highs only). Transfers keep the bound sums fixed, which plain
// coordinate moves cannot do at a point distribution.
std::vector<Point> poll_directions(std::size_t q)
{
    std::vector<Point> dirs;
    const std::size_t dim = 2 * q;
    auto unit = [&](std::initializer_list<std::pair<std::size_t, double>> parts) {
        Point d(dim, 0.0);
        for (auto [k, v] : parts) {
            d[k] += v;
        }
        dirs.push_back(std::move(d));
    };
    for (std::size_t k = 0; k < dim; ++k) {
        unit({{k, 1.0}});
        unit({{k, -1.0}});
    }
    for (std::size_t i = 0; i < q; ++i) {
        unit({{2 * i, 1.0}, {2 * i + 1, 1.0}});
        unit({{2 * i, -1.0}, {2 * i + 1, -1.0}});
        unit({{2 * i, -1.0}, {2 * i + 1, 1.0}});
        unit({{2 * i, 1.0}, {2 * i + 1, -1.0}});
    }
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            if (i == j) {
                continue;
            }
            unit({{2 * i, 1.0}, {2 * i + 1, 1.0}, {2 * j, -1.0}, {2 * j + 1, -1.0}});
            unit({{2 * i, 1.0}, {2 * j, -1.0}});
            unit({{2 * i + 1, 1.0}, {2 * j + 1, -1.0}});
        }
    }
    return dirs;
}

class Search {
public:
    Search(const ObservationSet& observations, const EstimatorConfig& config)
        : observations_(observations), config_(config),
          directions_(poll_directions(observations.frame().size()))
    {
    }

    struct Outcome {
        Point best;
        double score;
        RestartDiagnostics diagnostics;
    };

    Outcome run(std::size_t restart) const
    {
        const std::uint64_t seed = derive_seed(config_.seed, restart);
        Point x = initial_point(restart, seed);
        std::size_t evaluations = 1;
        double score = evaluate(x);
        double step = kInitialStep;
        std::size_t iterations = 0;
        while (step >= kMinimumStep && iterations < config_.max_iterations_per_start) {
            ++iterations;
            bool improved = false;
            for (const auto& d : directions_) {
                Point trial = x;
                for (std::size_t k = 0; k < trial.size(); ++k) {
                    trial[k] += step * d[k];
                }
                auto fixed = repair(std::move(trial));
                if (fixed.x == x) {
                    continue;
                }
                ++evaluations;
                const double s = evaluate(fixed.x, fixed.violation);
                if (s > score + config_.convergence_tol) {
                    x = std::move(fixed.x);
                    score = s;
                    improved = true;
                }
            }
            if (!improved) {
                step *= 0.5;
            }
        }
        return {x, score, {seed, score, iterations, evaluations, step < kMinimumStep}};
    }

private:
    Point initial_point(std::size_t restart, std::uint64_t seed) const
    {
        const std::size_t q = observations_.frame().size();
        Point x(2 * q);
        if (restart == 0) {
            std::fill(x.begin(), x.end(), 1.0 / static_cast<double>(q));
        } else if (restart == 1) {
            for (std::size_t i = 0; i < q; ++i) {
                x[2 * i] = 0.0;
                x[2 * i + 1] = 1.0;
            }
        } else {
            Rng rng(seed);
            for (double& v : x) {
                v = rng.uniform();
            }
        }
        return repair(std::move(x)).x;
    }

    double evaluate(const Point& x, double violation = 0.0) const
    {
        const double penalty = config_.penalty_weight * violation * violation;
        return objective(unpack(observations_.frame(), x), observations_, config_.alpha) - penalty;
    }

    const ObservationSet& observations_;
    const EstimatorConfig& config_;
    std::vector<Point> directions_;
};

void check_config(const EstimatorConfig& config)
{
    if (!(config.alpha >= 1.0)) {
        throw Error("alpha must be >= 1");
    }
    if (config.restarts == 0 || config.max_iterations_per_start == 0) {
        throw Error("restarts and iteration budget must be positive");
    }
    if (!(config.convergence_tol >= 0.0) || !(config.penalty_weight > 0.0)) {
        throw Error("convergence tolerance must be non-negative and penalty weight positive");
    }
}

} // namespace

double objective(const IntervalProbabilities& theta, const ObservationSet& observations, double alpha)
{
    if (!is_feasible(theta)) {
        throw Error("objective requires feasible interval probabilities");
    }
    const Interval lik = joint_likelihood(observations, theta).value;
    return distance(lik, Interval(0.0)) - ignorance(theta, alpha);
}

EstimationResult estimate(const ObservationSet& observations, const EstimatorConfig& config)
{
    check_config(config);
    observations.require_valid();

    const Search search(observations, config);
    std::vector<Search::Outcome> outcomes(config.restarts);
    std::size_t workers = config.workers ? config.workers : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min(workers, config.restarts);
    if (workers <= 1) {
        for (std::size_t r = 0; r < config.restarts; ++r) {
            outcomes[r] = search.run(r);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < config.restarts; r = next++) {
                    outcomes[r] = search.run(r);
                }
            });
        }
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r) {
        if (outcomes[r].score > outcomes[best].score) {
            best = r;
        }
    }

    EstimationDiagnostics diagnostics{config.seed, best, {}};
    diagnostics.restarts.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        diagnostics.restarts.push_back(o.diagnostics);
    }

    IntervalProbabilities theta = unpack(observations.frame(), outcomes[best].best);
    const Interval lik = joint_likelihood(observations, theta).value;
    const double dist = distance(lik, Interval(0.0));
    const double ign = ignorance(theta, config.alpha);
    const double ign1 = ignorance(theta, 1.0);
    return {config.alpha, std::move(theta), dist - ign, lik, ign, ign1, dist, std::move(diagnostics)};
}

std::vector<EstimationResult> alpha_sweep(const ObservationSet& observations,
                                          std::span<const double> alphas,
                                          const EstimatorConfig& config)
{
    if (alphas.empty()) {
        throw Error("alpha list must be non-empty");
    }
    std::vector<EstimationResult> rows;
    rows.reserve(alphas.size());
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        EstimatorConfig row = config;
        row.alpha = alphas[k];
        row.seed = config.seed + k;
        rows.push_back(estimate(observations, row));
    }
    return rows;
}

} // namespace ivbs
