#include "ivbs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "ivbs/error.hpp"
#include "ivbs/estimator.hpp"
#include "ivbs/io.hpp"
#include "ivbs/likelihood.hpp"
#include "ivbs/random.hpp"

namespace ivbs {

namespace gen {

Frame numbered_frame(std::size_t q)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < q; ++i) {
        names.push_back("H" + std::to_string(i + 1));
    }
    return Frame(std::move(names));
}

IntervalProbabilities random_feasible(const Frame& frame, std::uint64_t seed)
{
    Rng rng(seed);
    const std::size_t q = frame.size();
    std::vector<double> lo(q);
    std::vector<double> hi(q);
    double lo_sum = 0.0;
    double hi_sum = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
        const double u = rng.uniform();
        const double v = rng.uniform();
        lo[i] = std::min(u, v);
        hi[i] = std::max(u, v);
        lo_sum += lo[i];
        hi_sum += hi[i];
    }
    // Infeasible draws are pulled back: lows rescaled to a random total
    // below one, highs raised part of the way toward one.
    if (lo_sum > 1.0) {
        const double scale = rng.uniform() / lo_sum;
        for (double& v : lo) {
            v *= scale;
        }
    }
    if (hi_sum < 1.0) {
        const double room = static_cast<double>(q) - hi_sum;
        const double least = (1.0 - hi_sum) / room;
        const double t = least + rng.uniform() * (1.0 - least);
        for (double& v : hi) {
            v = std::min(1.0, v + t * (1.0 - v));
        }
    }
    std::vector<Interval> bounds;
    for (std::size_t i = 0; i < q; ++i) {
        bounds.emplace_back(std::min(lo[i], hi[i]), hi[i]);
    }
    return IntervalProbabilities(frame, std::move(bounds));
}

IntervalBeliefStructure random_valid_ibs(const Frame& frame, std::size_t focal_count, std::uint64_t seed)
{
    Rng rng(seed);
    const std::size_t q = frame.size();
    const std::uint64_t subsets = (std::uint64_t{1} << q) - 1;
    if (focal_count == 0 || focal_count > subsets) {
        throw Error("cannot draw that many distinct focal elements");
    }
    // Partial Fisher-Yates over the non-empty subset codes 1..2^q-1.
    std::vector<std::uint64_t> codes(subsets);
    std::iota(codes.begin(), codes.end(), std::uint64_t{1});
    for (std::size_t i = 0; i < focal_count; ++i) {
        std::swap(codes[i], codes[i + rng.below(subsets - i)]);
    }
    std::vector<double> point(focal_count);
    double total = 0.0;
    for (double& m : point) {
        m = -std::log(1.0 - rng.uniform());
        total += m;
    }
    // A fifth of the instances are crisp; the rest get boxes up to 0.5 wide.
    const double radius = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.0, 0.5);
    std::vector<MassEntry> entries;
    for (std::size_t i = 0; i < focal_count; ++i) {
        std::vector<std::size_t> members;
        for (std::size_t h = 0; h < q; ++h) {
            if ((codes[i] >> h) & 1U) {
                members.push_back(h);
            }
        }
        const double m = point[i] / total;
        const double lower = radius == 0.0 ? m : std::max(0.0, m - radius * rng.uniform());
        const double upper = radius == 0.0 ? m : std::min(1.0, m + radius * rng.uniform());
        entries.push_back({FocalElement(frame, std::move(members)), lower, upper});
    }
    return IntervalBeliefStructure(frame, std::move(entries));
}

} // namespace gen

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct Context {
    VerifyOptions options;
    // Every estimate produced by criteria 1, 3 and 4; checked by criterion 7.
    std::vector<EstimationResult> estimates;

    EstimatorConfig config(double alpha) const
    {
        EstimatorConfig c;
        c.alpha = alpha;
        c.seed = options.seed;
        c.restarts = options.restarts;
        c.workers = options.workers;
        return c;
    }
};

const ExpectedRow& row_for(const ExpectedTable& table, double alpha)
{
    for (const auto& r : table.rows) {
        if (r.alpha == alpha) {
            return r;
        }
    }
    throw Error("expected table has no row for alpha = " + num(alpha));
}

void require_same_frame(const ObservationSet& obs, const ExpectedTable& table)
{
    if (!(obs.frame() == table.frame)) {
        throw Error("observation and expected fixtures declare different frames");
    }
}

// Maximizer of prod_k sum_i m_ki P(F_ki) over point distributions
// (t, 1 - t) on a grid; crisp observations over a two-hypothesis frame.
double crisp_grid_argmax(const ObservationSet& obs, std::size_t steps)
{
    double best_t = 0.0;
    double best = -1.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(steps);
        const double p[2] = {t, 1.0 - t};
        double lik = 1.0;
        for (const auto& o : obs.observations()) {
            double v = 0.0;
            for (const auto& e : o.entries()) {
                double pf = 0.0;
                for (std::size_t h : e.focal.members()) {
                    pf += p[h];
                }
                v += e.lower * pf;
            }
            lik *= v;
        }
        if (lik > best) {
            best = lik;
            best_t = t;
        }
    }
    return best_t;
}

// 1. Crisp observations at alpha = 1 reproduce the point estimate, which is
// also the analytic likelihood maximizer.
std::string crisp_case(Context& ctx, bool& passed)
{
    const auto start = Clock::now();
    const auto obs = load_observations(ctx.options.fixtures / "table1.ibs");
    const auto expected = load_expected(ctx.options.fixtures / "table2.expected");
    require_same_frame(obs, expected);
    const auto& row = row_for(expected, 1.0);
    auto result = estimate(obs, ctx.config(1.0));
    const double elapsed = seconds_since(start);

    std::ostringstream os;
    passed = elapsed <= 10.0;
    for (std::size_t i = 0; i < obs.frame().size(); ++i) {
        const auto& got = result.theta[i];
        const double target = row.bounds[i].midpoint();
        const bool ok = std::abs(got.lo() - target) <= 0.005 && std::abs(got.hi() - target) <= 0.005 &&
                        got.width() <= 1e-3;
        passed = passed && ok;
        os << "p(" << obs.frame().name(i) << ")=[" << num(got.lo()) << ", " << num(got.hi())
           << "] target " << num(target) << (ok ? "" : " MISS") << "; ";
    }
    bool crisp = obs.frame().size() == 2;
    for (const auto& o : obs.observations()) {
        crisp = crisp && is_crisp(o);
    }
    if (!crisp) {
        passed = false;
        os << "fixture is not crisp over two hypotheses; ";
    } else {
        const double argmax = crisp_grid_argmax(obs, 100000);
        const bool ok = std::abs(result.theta[0].midpoint() - argmax) <= 0.005;
        passed = passed && ok;
        os << "analytic argmax p(" << obs.frame().name(0) << ")=" << num(argmax) << (ok ? "" : " MISS") << "; ";
    }
    os << "runtime " << num(elapsed, 3) << "s (limit 10s)";
    ctx.estimates.push_back(std::move(result));
    return os.str();
}

// 2. The printed I^1 column equals the mean width of each printed row.
std::string ignorance_column(Context& ctx, bool& passed)
{
    const auto expected = load_expected(ctx.options.fixtures / "table4.expected");
    passed = true;
    double worst = 0.0;
    std::size_t checked = 0;
    std::ostringstream misses;
    for (const auto& row : expected.rows) {
        if (!row.ignorance_1) {
            continue;
        }
        const IntervalProbabilities p(expected.frame, row.bounds);
        const double err = std::abs(ignorance(p, 1.0) - *row.ignorance_1);
        worst = std::max(worst, err);
        ++checked;
        if (err > 5e-4) {
            passed = false;
            misses << " alpha=" << num(row.alpha) << " off by " << num(err);
        }
    }
    if (checked == 0) {
        passed = false;
        return "no I^1 column in table4.expected";
    }
    return std::to_string(checked) + " rows, worst |I^1 - printed| = " + num(worst) + " (tol 5e-4)" +
           misses.str();
}

// Achieved objective >= objective at the printed parameter - 1e-3.
bool dominates(Context& ctx, const ObservationSet& obs, const ExpectedTable& table, double alpha,
               double time_limit, std::ostringstream& os)
{
    const auto& row = row_for(table, alpha);
    const IntervalProbabilities printed(table.frame, row.bounds);
    const double reference = objective(printed, obs, alpha);
    const auto start = Clock::now();
    auto result = estimate(obs, ctx.config(alpha));
    const double elapsed = seconds_since(start);
    const bool ok = result.objective >= reference - 1e-3 && elapsed <= time_limit;
    os << "alpha=" << num(alpha) << ": " << num(result.objective) << " vs printed " << num(reference)
       << " (" << num(elapsed, 3) << "s)" << (ok ? "" : " FAIL") << "; ";
    ctx.estimates.push_back(std::move(result));
    return ok;
}

// 3. Objective dominance on the interval observations for alpha 1..3.
std::string interval_dominance(Context& ctx, bool& passed)
{
    const auto obs = load_observations(ctx.options.fixtures / "table3.ibs");
    const auto expected = load_expected(ctx.options.fixtures / "table4.expected");
    require_same_frame(obs, expected);
    std::ostringstream os;
    passed = true;
    for (double alpha : {1.0, 2.0, 3.0}) {
        passed = dominates(ctx, obs, expected, alpha, 60.0, os) && passed;
    }
    os << "tol 1e-3, limit 60s per alpha";
    return os.str();
}

// 4. HIS data: alpha = 1 concentrates on the printed certain grade, alpha
// 2..5 dominate the printed rows.
std::string his_case(Context& ctx, bool& passed)
{
    const auto obs = load_observations(ctx.options.fixtures / "table5.ibs");
    const auto expected = load_expected(ctx.options.fixtures / "table6.expected");
    require_same_frame(obs, expected);
    const auto& first = row_for(expected, 1.0);
    std::size_t certain = 0;
    for (std::size_t i = 1; i < first.bounds.size(); ++i) {
        if (first.bounds[i].lo() > first.bounds[certain].lo()) {
            certain = i;
        }
    }
    auto result = estimate(obs, ctx.config(1.0));
    std::ostringstream os;
    passed = true;
    for (std::size_t i = 0; i < obs.frame().size(); ++i) {
        const auto& b = result.theta[i];
        const bool ok = (i == certain ? b.lo() >= 0.99 : b.hi() <= 0.01) && b.width() <= 1e-3;
        if (!ok) {
            passed = false;
            os << "alpha=1 " << obs.frame().name(i) << "=[" << num(b.lo()) << ", " << num(b.hi())
               << "] out of range; ";
        }
    }
    os << "alpha=1 P(" << obs.frame().name(certain) << ")=" << num(result.theta[certain].lo()) << "; ";
    ctx.estimates.push_back(std::move(result));
    for (double alpha : {2.0, 3.0, 4.0, 5.0}) {
        passed = dominates(ctx, obs, expected, alpha, 60.0, os) && passed;
    }
    os << "tol 1e-3";
    return os.str();
}

// 5. Greedy inner program vs. vertex/grid enumeration.
std::string inner_program_oracle(Context& ctx, bool& passed)
{
    const auto start = Clock::now();
    Rng rng(derive_seed(ctx.options.seed, 5));
    double worst = 0.0;
    constexpr std::size_t kInstances = 1000;
    for (std::size_t k = 0; k < kInstances; ++k) {
        const std::size_t q = 2 + rng.below(3);
        const Frame frame = gen::numbered_frame(q);
        const std::size_t max_focal = std::min<std::size_t>(5, (std::size_t{1} << q) - 1);
        const std::size_t n = 2 + rng.below(max_focal - 1);
        const auto obs = gen::random_valid_ibs(frame, n, rng.bits());
        const auto theta = gen::random_feasible(frame, rng.bits());
        const Interval fast = ibs_likelihood(obs, theta).likelihood.value;
        const Interval brute = ibs_likelihood_bruteforce(obs, theta, 2);
        worst = std::max({worst, std::abs(fast.lo() - brute.lo()), std::abs(fast.hi() - brute.hi())});
    }
    const double elapsed = seconds_since(start);
    passed = worst <= 1e-9 && elapsed <= 30.0;
    return std::to_string(kInstances) + " instances, worst bound difference " + num(worst) +
           " (tol 1e-9), runtime " + num(elapsed, 3) + "s (limit 30s)";
}

// 6. Subset likelihood bounds vs. sampled credal-set extremes.
std::string credal_semantics(Context& ctx, bool& passed)
{
    Rng rng(derive_seed(ctx.options.seed, 6));
    double worst_gap = 0.0;
    double worst_escape = 0.0;
    constexpr std::size_t kInstances = 200;
    constexpr std::size_t kSamples = 10000;
    for (std::size_t k = 0; k < kInstances; ++k) {
        const std::size_t q = 2 + rng.below(3);
        const Frame frame = gen::numbered_frame(q);
        const auto theta = gen::random_feasible(frame, rng.bits());
        const std::uint64_t code = 1 + rng.below((std::uint64_t{1} << q) - 1);
        std::vector<std::size_t> members;
        for (std::size_t h = 0; h < q; ++h) {
            if ((code >> h) & 1U) {
                members.push_back(h);
            }
        }
        const FocalElement focal(frame, members);
        const Interval bounds = subset_likelihood(focal, theta).value;
        double lo = INFINITY;
        double hi = -INFINITY;
        for (const auto& w : sample_feasible_points(theta, kSamples, rng.bits())) {
            double v = 0.0;
            for (std::size_t h : members) {
                v += w[h];
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        worst_escape = std::max({worst_escape, bounds.lo() - lo, hi - bounds.hi()});
        worst_gap = std::max({worst_gap, lo - bounds.lo(), bounds.hi() - hi});
    }
    passed = worst_escape <= 1e-9 && worst_gap <= 0.02;
    return std::to_string(kInstances) + " instances x " + std::to_string(kSamples) +
           " samples, worst gap to bound " + num(worst_gap) + " (tol 0.02), worst escape " +
           num(worst_escape) + " (tol 1e-9)";
}

// 7. Property suites.
std::string properties(Context& ctx, bool& passed)
{
    std::ostringstream os;
    passed = true;
    auto fail = [&](const std::string& what) {
        passed = false;
        os << what << "; ";
    };

    Rng rng(derive_seed(ctx.options.seed, 7));
    // Ignorance range and its two boundary cases.
    for (std::size_t k = 0; k < 2000; ++k) {
        const Frame frame = gen::numbered_frame(1 + rng.below(6));
        const auto p = gen::random_feasible(frame, rng.bits());
        for (double alpha : {1.0, 1.5, 2.0, 3.0, 10.0}) {
            const double v = ignorance(p, alpha);
            if (!(v >= 0.0 && v <= 1.0)) {
                fail("ignorance " + num(v) + " outside [0, 1]");
            }
        }
        if (ignorance(IntervalProbabilities::vacuous(frame), 1.0 + rng.uniform(0.0, 9.0)) != 1.0) {
            fail("vacuous ignorance != 1");
        }
        std::vector<double> point(frame.size(), 1.0 / static_cast<double>(frame.size()));
        if (ignorance(IntervalProbabilities::point(frame, point), 1.0 + rng.uniform(0.0, 9.0)) != 0.0) {
            fail("point ignorance != 0");
        }
    }
    os << "ignorance ok; ";

    // Distance symmetry, non-negativity and the degenerate case.
    double worst_sym = 0.0;
    double worst_degenerate = 0.0;
    for (std::size_t k = 0; k < 10000; ++k) {
        const double a = rng.uniform(-1.0, 1.0);
        const double b = rng.uniform(-1.0, 1.0);
        const double c = rng.uniform(-1.0, 1.0);
        const double d = rng.uniform(-1.0, 1.0);
        const Interval x(std::min(a, b), std::max(a, b));
        const Interval y(std::min(c, d), std::max(c, d));
        const double dxy = distance(x, y);
        worst_sym = std::max(worst_sym, std::abs(dxy - distance(y, x)));
        if (!(dxy >= 0.0)) {
            fail("negative distance");
        }
        worst_degenerate = std::max(worst_degenerate, std::abs(distance(Interval(a), Interval(c)) - std::abs(a - c)));
    }
    if (worst_sym > 1e-15 || worst_degenerate > 1e-15) {
        fail("distance symmetry " + num(worst_sym) + ", degenerate " + num(worst_degenerate));
    }
    os << "distance ok; ";

    // Estimator outputs from criteria 1, 3 and 4.
    std::size_t infeasible = 0;
    for (const auto& r : ctx.estimates) {
        if (!is_feasible(r.theta)) {
            ++infeasible;
        }
    }
    if (ctx.estimates.empty() || infeasible) {
        fail(std::to_string(infeasible) + " of " + std::to_string(ctx.estimates.size()) +
             " estimates infeasible");
    }
    os << ctx.estimates.size() << " estimates feasible; ";

    // Bit-identical reports for a fixed seed, regardless of worker count.
    const auto path = ctx.options.fixtures / "table3.ibs";
    const std::string text = read_file(path);
    const auto obs = parse_observations(text);
    EstimatorConfig config = ctx.config(2.0);
    config.restarts = std::min<std::size_t>(ctx.options.restarts, 8);
    const std::vector<double> alphas{1.0, 2.0};
    const ReportHeader header{content_digest(text), config.seed, config.restarts};
    config.workers = 1;
    const auto first = format_report(header, obs.frame(), alpha_sweep(obs, alphas, config));
    config.workers = 3;
    const auto second = format_report(header, obs.frame(), alpha_sweep(obs, alphas, config));
    if (first != second) {
        fail("reports differ between identical runs");
    }
    os << "determinism ok";
    return os.str();
}

using Check = std::string (*)(Context&, bool&);

struct Criterion {
    int id;
    const char* name;
    Check check;
};

constexpr Criterion kCriteria[] = {
    {1, "table2_crisp_point_estimate", crisp_case},
    {2, "table4_ignorance_column", ignorance_column},
    {3, "table4_objective_dominance", interval_dominance},
    {4, "table6_his_estimates", his_case},
    {5, "inner_program_oracle", inner_program_oracle},
    {6, "subset_likelihood_credal_set", credal_semantics},
    {7, "property_suites", properties},
};

} // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result)
{
    Context ctx{options, {}};
    std::vector<CriterionResult> results;
    for (const auto& c : kCriteria) {
        const auto start = Clock::now();
        CriterionResult r{c.id, c.name, false, {}, 0.0};
        try {
            r.detail = c.check(ctx, r.passed);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = seconds_since(start);
        if (on_result) {
            on_result(r);
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_criterion(const CriterionResult& result)
{
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", result.seconds);
    return std::string(result.passed ? "PASS " : "FAIL ") + std::to_string(result.id) + " " + result.name +
           " (" + time + "): " + result.detail;
}

} // namespace ivbs
