#ifndef IVBS_INTERVAL_HPP
#define IVBS_INTERVAL_HPP

namespace ivbs {

// Closed real interval [lo, hi]. Endpoints are plain doubles, no outward
// rounding.
class Interval {
public:
    constexpr Interval() = default;
    constexpr explicit Interval(double point) : lo_(point), hi_(point) {}
    // Throws ivbs::Error when lo > hi or either endpoint is NaN.
    Interval(double lo, double hi);

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }
    constexpr double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
    constexpr double halfwidth() const noexcept { return 0.5 * (hi_ - lo_); }
    constexpr double width() const noexcept { return hi_ - lo_; }
    constexpr bool degenerate() const noexcept { return lo_ == hi_; }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

// Tran-Duckstein dissimilarity:
//   sqrt((mid_a - mid_b)^2 + ((hw_a)^2 + (hw_b)^2) / 3)
// Note this is not a metric: distance(a, a) = sqrt(2/3) * hw_a.
double distance(const Interval& a, const Interval& b) noexcept;

// Bound-wise product [a.lo*b.lo, a.hi*b.hi]. Only valid for non-negative
// intervals (likelihoods); throws ivbs::Error on a negative lower bound.
Interval product(const Interval& a, const Interval& b);

} // namespace ivbs

#endif
