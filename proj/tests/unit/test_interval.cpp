#include <gtest/gtest.h>

#include <cmath>

#include "ivbs/error.hpp"
#include "ivbs/interval.hpp"
#include "ivbs/random.hpp"

using ivbs::Interval;

namespace {

Interval random_interval(ivbs::Rng& rng, double lo = -1.0, double hi = 1.0)
{
    const double a = rng.uniform(lo, hi);
    const double b = rng.uniform(lo, hi);
    return Interval(std::min(a, b), std::max(a, b));
}

} // namespace

TEST(Interval, DerivedQuantities)
{
    const Interval a(0.2, 0.6);
    EXPECT_DOUBLE_EQ(a.midpoint(), 0.4);
    EXPECT_DOUBLE_EQ(a.halfwidth(), 0.2);
    EXPECT_DOUBLE_EQ(a.width(), 0.4);
    EXPECT_FALSE(a.degenerate());
    EXPECT_TRUE(Interval(0.3).degenerate());
}

TEST(Interval, RejectsReversedEndpoints)
{
    EXPECT_THROW(Interval(0.5, 0.4), ivbs::Error);
    EXPECT_THROW(Interval(NAN, 0.4), ivbs::Error);
}

TEST(IntervalDistance, Examples)
{
    EXPECT_EQ(ivbs::distance(Interval(0.0), Interval(0.0)), 0.0);
    EXPECT_DOUBLE_EQ(ivbs::distance(Interval(0.7), Interval(-0.2)), 0.9);
    // sqrt(0.5^2 + 0.5^2 / 3)
    EXPECT_NEAR(ivbs::distance(Interval(0.0, 1.0), Interval(0.0)), std::sqrt(1.0 / 3.0), 1e-15);
    EXPECT_NEAR(ivbs::distance(Interval(0.0, 1.0), Interval(0.0)), 0.57735, 5e-6);
}

TEST(IntervalDistance, SelfDistanceIsNotZero)
{
    const Interval a(0.1, 0.5);
    EXPECT_NEAR(ivbs::distance(a, a), std::sqrt(2.0 / 3.0) * a.halfwidth(), 1e-15);
    EXPECT_GT(ivbs::distance(a, a), 0.0);
}

TEST(IntervalDistance, Properties)
{
    ivbs::Rng rng(2024);
    for (int k = 0; k < 10000; ++k) {
        const Interval a = random_interval(rng);
        const Interval b = random_interval(rng);
        const double d = ivbs::distance(a, b);
        ASSERT_NEAR(d, ivbs::distance(b, a), 1e-15);
        ASSERT_GE(d, std::abs(a.midpoint() - b.midpoint()));
        const double x = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        ASSERT_NEAR(ivbs::distance(Interval(x), Interval(y)), std::abs(x - y), 1e-15);
        if (!a.degenerate()) {
            ASSERT_GT(ivbs::distance(a, a), 0.0);
        }
    }
}

TEST(IntervalProduct, Examples)
{
    EXPECT_EQ(ivbs::product(Interval(0.5), Interval(0.5)), Interval(0.25));
    EXPECT_EQ(ivbs::product(Interval(0.0, 1.0), Interval(0.3, 0.4)), Interval(0.0, 0.4));
    const Interval p = ivbs::product(Interval(0.2, 0.3), Interval(0.4, 0.5));
    EXPECT_NEAR(p.lo(), 0.08, 1e-15);
    EXPECT_NEAR(p.hi(), 0.15, 1e-15);
}

TEST(IntervalProduct, RejectsNegativeFactors)
{
    EXPECT_THROW(ivbs::product(Interval(-0.1, 0.2), Interval(0.5)), ivbs::Error);
    EXPECT_THROW(ivbs::product(Interval(0.5), Interval(-1.0, -0.5)), ivbs::Error);
}

TEST(IntervalProduct, AssociativeAndMonotone)
{
    ivbs::Rng rng(7);
    for (int k = 0; k < 5000; ++k) {
        const Interval a = random_interval(rng, 0.0, 1.0);
        const Interval b = random_interval(rng, 0.0, 1.0);
        const Interval c = random_interval(rng, 0.0, 1.0);
        const Interval left = ivbs::product(ivbs::product(a, b), c);
        const Interval right = ivbs::product(a, ivbs::product(b, c));
        ASSERT_NEAR(left.lo(), right.lo(), 1e-15);
        ASSERT_NEAR(left.hi(), right.hi(), 1e-15);

        // Raising a bound of one factor never lowers the matching bound.
        const Interval wider(a.lo(), std::min(1.0, a.hi() + 0.1));
        ASSERT_GE(ivbs::product(wider, b).hi(), ivbs::product(a, b).hi());
        const Interval higher(std::min(a.lo() + 0.05, a.hi()), a.hi());
        ASSERT_GE(ivbs::product(higher, b).lo(), ivbs::product(a, b).lo());
    }
}
