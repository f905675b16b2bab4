#ifndef IVBS_IO_HPP
#define IVBS_IO_HPP

#include <filesystem>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivbs/belief.hpp"
#include "ivbs/estimator.hpp"
#include "ivbs/interval.hpp"

namespace ivbs {

// Observation file format (line oriented, '#' starts a comment):
//
//   frame: H1, H2, H3
//
//   observation: 1
//   {H1}: 0.30, 0.40
//   {H1,H2,H3}: 0.10, 0.20
//
// The frame line comes first and fixes hypothesis order. Each observation
// block lists focal elements as brace-enclosed hypothesis names with an
// interval mass "lower, upper", or a single number for a crisp mass.
//
// Throws ivbs::ParseError with the offending line.
ObservationSet parse_observations(std::string_view text);
ObservationSet load_observations(const std::filesystem::path& path);

// Inverse of parse_observations; numbers are written with 17 significant
// digits so parsing the output reproduces the set exactly.
std::string serialize_observations(const ObservationSet& observations);

// Reads a whole file; throws ivbs::Error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

// 64-bit FNV-1a of the bytes, rendered as "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);

inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportHeader {
    std::string input_digest;
    std::uint64_t seed;
    std::size_t restarts;
};

// Structured key/value report of an alpha sweep. Byte-identical for
// identical inputs and seed.
std::string format_report(const ReportHeader& header, const Frame& frame,
                          const std::vector<EstimationResult>& rows);

// Human-readable table: one row per alpha with every number rounded to four
// decimals.
std::string format_table(const Frame& frame, const std::vector<EstimationResult>& rows);

// Fixed four-decimal rendering used by format_table.
std::string fixed4(double value);

// Printed estimation results, one row per alpha:
//
//   frame: H1, H2, H3
//   row: 2 | [0.8397, 0.9433] [0.0057, 0.1093] [0.0510, 0.1547] | 0.1036
//
// The trailing "| I^1" column is optional.
struct ExpectedRow {
    double alpha;
    std::vector<Interval> bounds;
    std::optional<double> ignorance_1;
};

struct ExpectedTable {
    Frame frame;
    std::vector<ExpectedRow> rows;
};

ExpectedTable parse_expected(std::string_view text);
ExpectedTable load_expected(const std::filesystem::path& path);

} // namespace ivbs

#endif
