#include "ivbs/interval.hpp"

#include <cmath>
#include <sstream>

#include "ivbs/error.hpp"

namespace ivbs {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (!(lo <= hi)) {
        std::ostringstream os;
        os << "malformed interval [" << lo << ", " << hi << "]";
        throw Error(os.str());
    }
}

double distance(const Interval& a, const Interval& b) noexcept
{
    const double dm = a.midpoint() - b.midpoint();
    const double ha = a.halfwidth();
    const double hb = b.halfwidth();
    return std::sqrt(dm * dm + (ha * ha + hb * hb) / 3.0);
}

Interval product(const Interval& a, const Interval& b)
{
    if (a.lo() < 0.0 || b.lo() < 0.0) {
        throw Error("interval product requires non-negative factors");
    }
    return Interval(a.lo() * b.lo(), a.hi() * b.hi());
}

} // namespace ivbs
