#ifndef IVBS_VERIFY_HPP
#define IVBS_VERIFY_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "ivbs/belief.hpp"
#include "ivbs/interval_probabilities.hpp"

namespace ivbs {

// Reproduction checks against the bundled fixtures:
//   table1.ibs / table2.expected   crisp observations and their point estimate
//   table3.ibs / table4.expected   interval observations, alpha sweep 1..20
//   table5.ibs / table6.expected   HIS trustworthiness, alpha sweep 1..5
struct VerifyOptions {
    std::filesystem::path fixtures;
    std::uint64_t seed = 42;
    std::size_t restarts = 64;
    std::size_t workers = 0;
};

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

// Runs criteria 1..7 in order. A missing or broken fixture fails the
// criteria that need it; it never throws. `on_result`, when set, is called
// as each criterion finishes.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS 3 table4_objective_dominance (12.3s): <detail>"
std::string format_criterion(const CriterionResult& result);

// Random instance generators shared with the test suites.
namespace gen {

// Feasible interval probabilities on a frame of size q: each interval is
// spanned by two uniform draws; when sum lo > 1 or sum hi < 1 the draw is
// pulled back into the feasible region.
IntervalProbabilities random_feasible(const Frame& frame, std::uint64_t seed);

// Valid interval belief structure with `focal_count` distinct random focal
// elements (focal_count <= 2^q - 1). Masses are boxes around a random
// point assignment, so sum a <= 1 <= sum b always holds; some instances are
// crisp.
IntervalBeliefStructure random_valid_ibs(const Frame& frame, std::size_t focal_count, std::uint64_t seed);

Frame numbered_frame(std::size_t q);

} // namespace gen

} // namespace ivbs

#endif
