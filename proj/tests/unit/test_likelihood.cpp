#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ivbs/error.hpp"
#include "ivbs/likelihood.hpp"
#include "ivbs/random.hpp"
#include "ivbs/verify.hpp"
#include "test_support.hpp"

using namespace ivbs;
using test::make_ibs;

namespace {

IntervalProbabilities ab_theta(Interval a, Interval b)
{
    return IntervalProbabilities(test::ab_frame(), {a, b});
}

// Extremes of P(F) over point distributions on a grid of step 1/steps that
// lie inside theta. Two-hypothesis frames only.
Interval grid_credal_bounds(const IntervalProbabilities& theta, std::size_t steps)
{
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double pa = static_cast<double>(k) / static_cast<double>(steps);
        const double pb = 1.0 - pa;
        if (pa < theta[0].lo() - 1e-12 || pa > theta[0].hi() + 1e-12 || pb < theta[1].lo() - 1e-12 ||
            pb > theta[1].hi() + 1e-12) {
            continue;
        }
        lo = std::min(lo, pa);
        hi = std::max(hi, pa);
    }
    return Interval(lo, hi);
}

} // namespace

TEST(SingletonLikelihood, Examples)
{
    const auto theta = IntervalProbabilities(test::h3_frame(), {Interval(0.3, 0.45), Interval(0.0), Interval(0.2, 0.7)});
    EXPECT_EQ(singleton_likelihood(0, theta).value, Interval(0.3, 0.45));
    EXPECT_EQ(singleton_likelihood(1, theta).value, Interval(0.0));
    EXPECT_EQ(singleton_likelihood(0, ab_theta(Interval(0.6), Interval(0.4))).value, Interval(0.6));
    EXPECT_THROW(singleton_likelihood(3, theta), Error);
}

TEST(SubsetLikelihood, WholeFrameIsCertain)
{
    const auto theta = IntervalProbabilities(test::h3_frame(), {Interval(0.1, 0.5), Interval(0.2, 0.4), Interval(0.0, 0.6)});
    const FocalElement all(test::h3_frame(), std::vector<std::string>{"H1", "H2", "H3"});
    EXPECT_EQ(subset_likelihood(all, theta).value, Interval(1.0));
}

TEST(SubsetLikelihood, HandEvaluationMatchesGridOracle)
{
    const auto theta = ab_theta(Interval(0.2, 0.5), Interval(0.6, 0.7));
    const FocalElement a(test::ab_frame(), std::vector<std::string>{"a"});
    const Interval got = subset_likelihood(a, theta).value;
    EXPECT_NEAR(got.lo(), 0.3, 1e-15);
    EXPECT_NEAR(got.hi(), 0.4, 1e-15);
    const Interval grid = grid_credal_bounds(theta, 1000);
    EXPECT_NEAR(got.lo(), grid.lo(), 1e-9);
    EXPECT_NEAR(got.hi(), grid.hi(), 1e-9);
}

TEST(SubsetLikelihood, SingletonIsSingletonIntersectedWithComplementBounds)
{
    Rng rng(3);
    for (int k = 0; k < 500; ++k) {
        const auto theta = gen::random_feasible(test::h3_frame(), rng.bits());
        for (std::size_t h = 0; h < 3; ++h) {
            const FocalElement f(test::h3_frame(), std::vector<std::size_t>{h});
            const Interval single = singleton_likelihood(h, theta).value;
            const Interval subset = subset_likelihood(f, theta).value;
            ASSERT_GE(subset.lo(), single.lo());
            ASSERT_LE(subset.hi(), single.hi());
        }
    }
}

TEST(SubsetLikelihood, SupersetNeverDecreasesBounds)
{
    Rng rng(5);
    for (int k = 0; k < 2000; ++k) {
        const std::size_t q = 2 + rng.below(4);
        const Frame frame = gen::numbered_frame(q);
        const auto theta = gen::random_feasible(frame, rng.bits());
        const std::uint64_t code = 1 + rng.below((1U << q) - 1);
        const std::uint64_t super = code | (1 + rng.below((1U << q) - 1));
        auto members = [&](std::uint64_t c) {
            std::vector<std::size_t> m;
            for (std::size_t h = 0; h < q; ++h) {
                if ((c >> h) & 1U) {
                    m.push_back(h);
                }
            }
            return m;
        };
        const Interval small = subset_likelihood(FocalElement(frame, members(code)), theta).value;
        const Interval big = subset_likelihood(FocalElement(frame, members(super)), theta).value;
        ASSERT_LE(small.lo(), big.lo() + 1e-15);
        ASSERT_LE(small.hi(), big.hi() + 1e-15);
        ASSERT_GE(small.lo(), 0.0);
        ASSERT_LE(big.hi(), 1.0);
    }
}

TEST(IbsLikelihood, CrispObservationAtPointParameter)
{
    const auto theta = ab_theta(Interval(0.6), Interval(0.4));
    const auto r = ibs_likelihood(test::crisp_ab(0.3, 0.3, 0.4), theta);
    EXPECT_NEAR(r.likelihood.value.lo(), 0.7, 1e-15);
    EXPECT_NEAR(r.likelihood.value.hi(), 0.7, 1e-15);
    const Interval brute = ibs_likelihood_bruteforce(test::crisp_ab(0.3, 0.3, 0.4), theta, 3);
    EXPECT_NEAR(brute.lo(), 0.7, 1e-12);
    EXPECT_NEAR(brute.hi(), 0.7, 1e-12);
}

TEST(IbsLikelihood, VacuousObservationIsCertain)
{
    const Frame f = test::h3_frame();
    const auto obs = make_ibs(f, {{{"H1", "H2", "H3"}, 1.0, 1.0}});
    Rng rng(1);
    for (int k = 0; k < 50; ++k) {
        EXPECT_EQ(ibs_likelihood(obs, gen::random_feasible(f, rng.bits())).likelihood.value, Interval(1.0));
    }
}

TEST(IbsLikelihood, Table3Observation1UnderVacuousParameter)
{
    const auto obs = test::table3_obs1();
    const auto theta = IntervalProbabilities::vacuous(test::h3_frame());
    const auto r = ibs_likelihood(obs, theta);
    // Singletons give [0, 1], the frame gives [1, 1]. The minimum keeps the
    // frame at its lower mass 0.10; the maximum puts everything on L+ = 1.
    EXPECT_NEAR(r.likelihood.value.lo(), 0.10, 1e-15);
    EXPECT_NEAR(r.likelihood.value.hi(), 1.0, 1e-15);
    const Interval brute = ibs_likelihood_bruteforce(obs, theta, 4);
    EXPECT_NEAR(brute.lo(), r.likelihood.value.lo(), 1e-12);
    EXPECT_NEAR(brute.hi(), r.likelihood.value.hi(), 1e-12);
}

TEST(IbsLikelihood, CertificatesSatisfyConstraints)
{
    Rng rng(21);
    for (int k = 0; k < 500; ++k) {
        const std::size_t q = 2 + rng.below(3);
        const Frame frame = gen::numbered_frame(q);
        const std::size_t n = 1 + rng.below(std::min<std::size_t>(6, (1U << q) - 1));
        const auto obs = gen::random_valid_ibs(frame, n, rng.bits());
        const auto theta = gen::random_feasible(frame, rng.bits());
        const auto r = ibs_likelihood(obs, theta);
        for (const auto* sol : {&r.lower, &r.upper}) {
            double sum = 0.0;
            double value = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto& e = obs.entries()[i];
                const Interval lik = subset_likelihood(e.focal, theta).value;
                ASSERT_GE(sol->mass[i], e.lower);
                ASSERT_LE(sol->mass[i], e.upper);
                ASSERT_GE(sol->likelihood_choice[i], lik.lo());
                ASSERT_LE(sol->likelihood_choice[i], lik.hi());
                sum += sol->mass[i];
                value += sol->mass[i] * sol->likelihood_choice[i];
            }
            ASSERT_NEAR(sum, 1.0, 1e-12);
            ASSERT_NEAR(value, sol->objective_value, 1e-15);
        }
        EXPECT_EQ(r.lower.bound, Bound::Lower);
        EXPECT_EQ(r.upper.bound, Bound::Upper);
        ASSERT_LE(r.likelihood.value.lo(), r.likelihood.value.hi());
        ASSERT_GE(r.likelihood.value.lo(), 0.0);
        ASSERT_LE(r.likelihood.value.hi(), 1.0);
    }
}

TEST(IbsLikelihood, CrispAtPointParameterIsDegenerate)
{
    Rng rng(8);
    for (int k = 0; k < 500; ++k) {
        const std::size_t q = 2 + rng.below(3);
        const Frame frame = gen::numbered_frame(q);
        const auto sample = sample_feasible_points(gen::random_feasible(frame, rng.bits()), 1, rng.bits());
        const auto theta = IntervalProbabilities::point(frame, sample.front());
        // Degenerate masses that sum to one.
        std::vector<MassEntry> entries;
        const std::size_t n = 1 + rng.below(std::min<std::size_t>(5, (1U << q) - 1));
        std::vector<double> m(n);
        for (double& v : m) {
            v = rng.uniform();
        }
        const double total = std::accumulate(m.begin(), m.end(), 0.0);
        std::vector<std::uint64_t> used;
        double expected = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t code;
            do {
                code = 1 + rng.below((1U << q) - 1);
            } while (std::find(used.begin(), used.end(), code) != used.end());
            used.push_back(code);
            std::vector<std::size_t> members;
            double p = 0.0;
            for (std::size_t h = 0; h < q; ++h) {
                if ((code >> h) & 1U) {
                    members.push_back(h);
                    p += sample.front()[h];
                }
            }
            entries.push_back({FocalElement(frame, members), m[i] / total, m[i] / total});
            expected += m[i] / total * p;
        }
        const IntervalBeliefStructure obs(frame, std::move(entries));
        const Interval got = ibs_likelihood(obs, theta).likelihood.value;
        ASSERT_NEAR(got.lo(), got.hi(), 1e-12);
        ASSERT_NEAR(got.lo(), expected, 1e-12);
    }
}

TEST(IbsLikelihood, EmptyMassBoxIsAnError)
{
    const Frame f = test::ab_frame();
    const auto obs = make_ibs(f, {{{"a"}, 0.3, 0.4}, {{"b"}, 0.3, 0.4}});
    EXPECT_THROW(ibs_likelihood(obs, IntervalProbabilities::vacuous(f)), Error);
}

TEST(IbsLikelihood, FrameMismatchIsAnError)
{
    EXPECT_THROW(ibs_likelihood(test::table3_obs1(), IntervalProbabilities::vacuous(test::ab_frame())), Error);
}

TEST(IbsLikelihoodBruteforce, TwoVertexPolytope)
{
    const Frame f = test::ab_frame();
    const auto obs = make_ibs(f, {{{"a"}, 0.0, 1.0}, {{"b"}, 0.0, 1.0}});
    const auto theta = ab_theta(Interval(0.3), Interval(0.7));
    const Interval brute = ibs_likelihood_bruteforce(obs, theta, 1);
    EXPECT_NEAR(brute.lo(), 0.3, 1e-15);
    EXPECT_NEAR(brute.hi(), 0.7, 1e-15);
}

TEST(IbsLikelihoodBruteforce, GuardsSize)
{
    const Frame f = gen::numbered_frame(3);
    const auto obs = gen::random_valid_ibs(f, 6, 1);
    EXPECT_THROW(ibs_likelihood_bruteforce(obs, IntervalProbabilities::vacuous(f), 2), Error);
    EXPECT_THROW(ibs_likelihood_bruteforce(test::table3_obs1(), IntervalProbabilities::vacuous(test::h3_frame()), 0), Error);
}

TEST(IbsLikelihood, MatchesBruteforce)
{
    Rng rng(1234);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t q = 2 + rng.below(3);
        const Frame frame = gen::numbered_frame(q);
        const std::size_t max_focal = std::min<std::size_t>(4, (1U << q) - 1);
        const std::size_t n = 1 + rng.below(max_focal);
        const auto obs = gen::random_valid_ibs(frame, n, rng.bits());
        const auto theta = gen::random_feasible(frame, rng.bits());
        const Interval fast = ibs_likelihood(obs, theta).likelihood.value;
        const Interval brute = ibs_likelihood_bruteforce(obs, theta, 3);
        ASSERT_NEAR(fast.lo(), brute.lo(), 1e-9) << "instance " << k;
        ASSERT_NEAR(fast.hi(), brute.hi(), 1e-9) << "instance " << k;
    }
}

TEST(JointLikelihood, Table1AtAnalyticMaximum)
{
    const auto theta = ab_theta(Interval(0.6), Interval(0.4));
    const Interval l = joint_likelihood(test::table1(), theta).value;
    // 0.6^3 * 0.4^2 * 0.7
    EXPECT_NEAR(l.lo(), 0.024192, 1e-15);
    EXPECT_NEAR(l.hi(), 0.024192, 1e-15);
}

TEST(JointLikelihood, SingleObservationEqualsIbsLikelihood)
{
    const auto obs = test::table3_obs1();
    const ObservationSet set(test::h3_frame(), {obs});
    const auto theta = test::table4_alpha2();
    EXPECT_EQ(joint_likelihood(set, theta).value, ibs_likelihood(obs, theta).likelihood.value);
}

TEST(JointLikelihood, ZeroLowerBoundPropagates)
{
    const Frame f = test::ab_frame();
    const auto certain_a = make_ibs(f, {{{"a"}, 1.0, 1.0}});
    const auto theta = ab_theta(Interval(0.0, 0.5), Interval(0.5, 1.0));
    const ObservationSet set(f, {test::crisp_ab(0.3, 0.3, 0.4), certain_a});
    const Interval l = joint_likelihood(set, theta).value;
    EXPECT_EQ(l.lo(), 0.0);
    EXPECT_GT(l.hi(), 0.0);
}
