#include <gtest/gtest.h>

#include <numeric>

#include "ivbs/error.hpp"
#include "ivbs/interval_probabilities.hpp"
#include "ivbs/random.hpp"
#include "ivbs/verify.hpp"
#include "test_support.hpp"

using namespace ivbs;

namespace {

IntervalProbabilities make(std::vector<Interval> bounds)
{
    Frame frame = gen::numbered_frame(bounds.size());
    return IntervalProbabilities(std::move(frame), std::move(bounds));
}

} // namespace

TEST(IntervalProbabilities, RejectsOutOfRangeBounds)
{
    EXPECT_THROW(make({Interval(-0.1, 0.5), Interval(0.5, 1.0)}), Error);
    EXPECT_THROW(make({Interval(0.1, 1.5), Interval(0.5, 1.0)}), Error);
    EXPECT_THROW(IntervalProbabilities(gen::numbered_frame(3), {Interval(0.5)}), Error);
}

TEST(IsFeasible, Examples)
{
    // 0.4 + 0.25 + 0.35 = 1.0 exactly reaches one.
    EXPECT_TRUE(is_feasible(make({Interval(0.3, 0.4), Interval(0.1, 0.25), Interval(0.25, 0.35)})));
    const double point[] = {0.6, 0.4};
    EXPECT_TRUE(is_feasible(IntervalProbabilities::point(test::ab_frame(), point)));
    EXPECT_FALSE(is_feasible(make({Interval(0.6, 0.7), Interval(0.6, 0.7)})));
    EXPECT_FALSE(is_feasible(make({Interval(0.1, 0.2), Interval(0.1, 0.2)})));
}

TEST(Ignorance, Examples)
{
    const double point[] = {0.2, 0.5, 0.3};
    const auto p = IntervalProbabilities::point(test::h3_frame(), point);
    for (double alpha : {1.0, 2.0, 7.5}) {
        EXPECT_EQ(ignorance(p, alpha), 0.0);
        EXPECT_EQ(ignorance(IntervalProbabilities::vacuous(test::h3_frame()), alpha), 1.0);
    }
    EXPECT_NEAR(ignorance(test::table4_alpha2(), 1.0), 0.1036, 5e-4);
}

TEST(Ignorance, Errors)
{
    const auto p = IntervalProbabilities::vacuous(test::ab_frame());
    EXPECT_THROW(ignorance(p, 0.5), Error);
    EXPECT_THROW(ignorance(p, NAN), Error);
    EXPECT_THROW(ignorance(make({Interval(0.6, 0.7), Interval(0.6, 0.7)}), 1.0), Error);
}

TEST(Ignorance, RangeAndMonotoneInAlpha)
{
    Rng rng(11);
    for (int k = 0; k < 2000; ++k) {
        const auto p = gen::random_feasible(gen::numbered_frame(1 + rng.below(6)), rng.bits());
        double previous = 1.0;
        for (double alpha : {1.0, 1.25, 2.0, 3.0, 5.0, 20.0}) {
            const double v = ignorance(p, alpha);
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0);
            ASSERT_LE(v, previous + 1e-15);
            previous = v;
        }
        ASSERT_EQ(ignorance(p, 1.0) == 0.0, p.point_valued());
    }
}

TEST(SampleFeasiblePoints, PointDistributionIsReturnedVerbatim)
{
    const double point[] = {0.25, 0.5, 0.25};
    const auto p = IntervalProbabilities::point(test::h3_frame(), point);
    for (const auto& w : sample_feasible_points(p, 20, 5)) {
        EXPECT_EQ(w, (std::vector<double>{0.25, 0.5, 0.25}));
    }
}

TEST(SampleFeasiblePoints, DeterministicInSeed)
{
    const auto p = IntervalProbabilities::vacuous(test::ab_frame());
    const auto first = sample_feasible_points(p, 3, 99);
    ASSERT_EQ(first.size(), 3U);
    for (const auto& w : first) {
        EXPECT_NEAR(w[0] + w[1], 1.0, 1e-12);
    }
    EXPECT_EQ(first, sample_feasible_points(p, 3, 99));
    EXPECT_NE(first, sample_feasible_points(p, 3, 100));
}

TEST(SampleFeasiblePoints, SingletonBoundsOfTable3Observation1)
{
    const auto p = make({Interval(0.30, 0.40), Interval(0.10, 0.25), Interval(0.25, 0.35)});
    for (const auto& w : sample_feasible_points(p, 1000, 3)) {
        EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    }
}

TEST(SampleFeasiblePoints, InfeasibleIsAnError)
{
    EXPECT_THROW(sample_feasible_points(make({Interval(0.6, 0.7), Interval(0.6, 0.7)}), 1, 0), Error);
}

TEST(SampleFeasiblePoints, EverySampleInsideTheBox)
{
    Rng rng(17);
    for (int k = 0; k < 300; ++k) {
        const auto p = gen::random_feasible(gen::numbered_frame(1 + rng.below(5)), rng.bits());
        for (const auto& w : sample_feasible_points(p, 50, rng.bits())) {
            double sum = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                ASSERT_GE(w[i], p[i].lo());
                ASSERT_LE(w[i], p[i].hi());
                sum += w[i];
            }
            ASSERT_NEAR(sum, 1.0, 1e-12);
        }
    }
}
