#include "ivbs/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "ivbs/error.hpp"

namespace ivbs {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

double parse_number(std::string_view token, std::size_t line)
{
    token = trim(token);
    double value = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc() || ptr != end) {
        throw ParseError(line, "expected a number, got '" + std::string(token) + "'");
    }
    return value;
}

// Splits "key: value" on the first colon; nullopt when there is no colon.
std::optional<std::pair<std::string_view, std::string_view>> key_value(std::string_view s)
{
    const auto pos = s.find(':');
    if (pos == std::string_view::npos) {
        return std::nullopt;
    }
    return std::pair{trim(s.substr(0, pos)), trim(s.substr(pos + 1))};
}

struct Line {
    std::size_t number;
    std::string_view text;
};

// Non-blank lines with comments stripped.
std::vector<Line> content_lines(std::string_view text)
{
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = text.find('\n', start);
        std::string_view raw = text.substr(start, pos == std::string_view::npos ? text.npos : pos - start);
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        raw = trim(raw);
        if (!raw.empty()) {
            lines.push_back({number, raw});
        }
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return lines;
}

Frame parse_frame_line(const std::vector<Line>& lines, std::size_t line_number_if_missing)
{
    if (lines.empty()) {
        throw ParseError(line_number_if_missing, "missing 'frame:' declaration");
    }
    const auto kv = key_value(lines.front().text);
    if (!kv || kv->first != "frame") {
        throw ParseError(lines.front().number, "first entry must be the 'frame:' declaration");
    }
    std::vector<std::string> names;
    for (auto name : split(kv->second, ',')) {
        names.emplace_back(name);
    }
    try {
        return Frame(std::move(names));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(lines.front().number, e.what());
    }
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// At least six significant digits, trailing zeros kept.
std::string report_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.17g", v);
    return buf;
}

std::string alpha_label(double alpha)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", alpha);
    return buf;
}

} // namespace

ObservationSet parse_observations(std::string_view text)
{
    const auto lines = content_lines(text);
    Frame frame = parse_frame_line(lines, 1);

    struct Pending {
        std::string label;
        std::size_t line;
        std::vector<MassEntry> entries;
    };
    std::vector<Pending> blocks;

    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& [number, body] = lines[k];
        if (body.front() == '{') {
            if (blocks.empty()) {
                throw ParseError(number, "focal element listed before any 'observation:' line");
            }
            const auto close = body.find('}');
            if (close == std::string_view::npos) {
                throw ParseError(number, "unterminated '{'");
            }
            std::vector<std::string> names;
            for (auto name : split(body.substr(1, close - 1), ',')) {
                if (name.empty()) {
                    throw ParseError(number, "empty hypothesis name in focal element");
                }
                names.emplace_back(name);
            }
            std::string_view rest = trim(body.substr(close + 1));
            if (rest.empty() || rest.front() != ':') {
                throw ParseError(number, "expected ':' after focal element");
            }
            const auto masses = split(rest.substr(1), ',');
            if (masses.size() > 2) {
                throw ParseError(number, "mass must be 'lower, upper' or a single number");
            }
            const double lower = parse_number(masses[0], number);
            const double upper = masses.size() == 2 ? parse_number(masses[1], number) : lower;
            try {
                auto& entries = blocks.back().entries;
                FocalElement focal(frame, names);
                for (const auto& e : entries) {
                    if (e.focal == focal) {
                        throw ParseError(number, "duplicate focal element in observation '" +
                                                     blocks.back().label + "'");
                    }
                }
                entries.push_back({std::move(focal), lower, upper});
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(number, e.what());
            }
            continue;
        }
        const auto kv = key_value(body);
        if (!kv || kv->first != "observation") {
            throw ParseError(number, "expected 'observation: <label>' or a focal element line");
        }
        if (kv->second.empty()) {
            throw ParseError(number, "observation label must be non-empty");
        }
        blocks.push_back({std::string(kv->second), number, {}});
    }

    if (blocks.empty()) {
        throw ParseError(lines.empty() ? 1 : lines.back().number, "no observations");
    }
    std::vector<IntervalBeliefStructure> observations;
    std::vector<std::string> labels;
    for (auto& b : blocks) {
        if (b.entries.empty()) {
            throw ParseError(b.line, "observation '" + b.label + "' has no focal elements");
        }
        observations.emplace_back(frame, std::move(b.entries));
        labels.push_back(std::move(b.label));
    }
    return ObservationSet(std::move(frame), std::move(observations), std::move(labels));
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ObservationSet load_observations(const std::filesystem::path& path)
{
    return parse_observations(read_file(path));
}

std::string serialize_observations(const ObservationSet& observations)
{
    std::ostringstream os;
    const Frame& frame = observations.frame();
    os << "frame: ";
    for (std::size_t i = 0; i < frame.size(); ++i) {
        os << (i ? ", " : "") << frame.name(i);
    }
    os << '\n';
    for (std::size_t k = 0; k < observations.size(); ++k) {
        os << "\nobservation: " << observations.labels()[k] << '\n';
        for (const auto& e : observations[k].entries()) {
            os << '{';
            bool first = true;
            for (std::size_t m : e.focal.members()) {
                os << (first ? "" : ",") << frame.name(m);
                first = false;
            }
            os << "}: " << format_number(e.lower);
            if (e.upper != e.lower) {
                os << ", " << format_number(e.upper);
            }
            os << '\n';
        }
    }
    return os.str();
}

std::string content_digest(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
    return buf;
}

std::string format_report(const ReportHeader& header, const Frame& frame,
                          const std::vector<EstimationResult>& rows)
{
    std::ostringstream os;
    os << "# interval belief structure parameter estimation\n";
    os << "tool_version = " << kToolVersion << '\n';
    os << "input_digest = " << header.input_digest << '\n';
    os << "seed = " << header.seed << '\n';
    os << "restarts = " << header.restarts << '\n';
    os << "frame = ";
    for (std::size_t i = 0; i < frame.size(); ++i) {
        os << (i ? ", " : "") << frame.name(i);
    }
    os << '\n';
    os << "row_count = " << rows.size() << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const auto& diag = row.diagnostics;
        os << "\n[row " << r + 1 << "]\n";
        os << "alpha = " << alpha_label(row.alpha) << '\n';
        os << "seed = " << diag.seed << '\n';
        for (std::size_t i = 0; i < frame.size(); ++i) {
            os << "theta." << frame.name(i) << " = " << report_number(row.theta[i].lo()) << ", "
               << report_number(row.theta[i].hi()) << '\n';
        }
        os << "ignorance_1 = " << report_number(row.ignorance_1) << '\n';
        os << "ignorance_alpha = " << report_number(row.ignorance) << '\n';
        os << "distance = " << report_number(row.distance_term) << '\n';
        os << "objective = " << report_number(row.objective) << '\n';
        os << "likelihood = " << report_number(row.joint_likelihood.lo()) << ", "
           << report_number(row.joint_likelihood.hi()) << '\n';
        std::size_t converged = 0;
        std::size_t iterations = 0;
        std::size_t evaluations = 0;
        for (const auto& rd : diag.restarts) {
            converged += rd.converged ? 1 : 0;
            iterations += rd.iterations;
            evaluations += rd.evaluations;
        }
        os << "best_restart = " << diag.best_restart << '\n';
        os << "converged = " << (diag.converged() ? "true" : "false") << '\n';
        os << "restarts_converged = " << converged << '\n';
        os << "total_iterations = " << iterations << '\n';
        os << "total_evaluations = " << evaluations << '\n';
        os << "restart_objectives = ";
        for (std::size_t k = 0; k < diag.restarts.size(); ++k) {
            os << (k ? ", " : "") << report_number(diag.restarts[k].best_objective);
        }
        os << '\n';
    }
    return os.str();
}

std::string fixed4(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    // Keep "-0.0000" from leaking into tables.
    if (std::string_view(buf) == "-0.0000") {
        return "0.0000";
    }
    return buf;
}

std::string format_table(const Frame& frame, const std::vector<EstimationResult>& rows)
{
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{"alpha"};
    for (const auto& n : frame.names()) {
        head.push_back("P_I(" + n + ")");
    }
    head.push_back("I^1(P_I)");
    head.push_back("objective");
    cells.push_back(std::move(head));
    for (const auto& row : rows) {
        std::vector<std::string> line{alpha_label(row.alpha)};
        for (const auto& b : row.theta.bounds()) {
            line.push_back("[" + fixed4(b.lo()) + ", " + fixed4(b.hi()) + "]");
        }
        line.push_back(fixed4(row.ignorance_1));
        line.push_back(fixed4(row.objective));
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> widths(cells.front().size(), 0);
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            widths[c] = std::max(widths[c], line[c].size());
        }
    }
    std::ostringstream os;
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            os << line[c];
            if (c + 1 < line.size()) {
                os << std::string(widths[c] - line[c].size() + 2, ' ');
            }
        }
        os << '\n';
    }
    return os.str();
}

ExpectedTable parse_expected(std::string_view text)
{
    const auto lines = content_lines(text);
    Frame frame = parse_frame_line(lines, 1);
    std::vector<ExpectedRow> rows;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& [number, body] = lines[k];
        const auto kv = key_value(body);
        if (!kv || kv->first != "row") {
            throw ParseError(number, "expected 'row: <alpha> | <intervals> [| <I^1>]'");
        }
        const auto columns = split(kv->second, '|');
        if (columns.size() < 2 || columns.size() > 3) {
            throw ParseError(number, "row needs 2 or 3 '|'-separated columns");
        }
        ExpectedRow row{parse_number(columns[0], number), {}, std::nullopt};
        std::string_view rest = columns[1];
        while (!(rest = trim(rest)).empty()) {
            if (rest.front() != '[') {
                throw ParseError(number, "expected '[' to open an interval");
            }
            const auto close = rest.find(']');
            if (close == std::string_view::npos) {
                throw ParseError(number, "unterminated '['");
            }
            const auto ends = split(rest.substr(1, close - 1), ',');
            if (ends.size() != 2) {
                throw ParseError(number, "interval must be '[lower, upper]'");
            }
            const double lo = parse_number(ends[0], number);
            const double hi = parse_number(ends[1], number);
            if (!(lo <= hi)) {
                throw ParseError(number, "interval lower bound exceeds upper bound");
            }
            row.bounds.emplace_back(lo, hi);
            rest = rest.substr(close + 1);
        }
        if (row.bounds.size() != frame.size()) {
            throw ParseError(number, "row has " + std::to_string(row.bounds.size()) +
                                         " intervals for a frame of " + std::to_string(frame.size()));
        }
        if (columns.size() == 3) {
            row.ignorance_1 = parse_number(columns[2], number);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError(lines.empty() ? 1 : lines.back().number, "no rows");
    }
    return {std::move(frame), std::move(rows)};
}

ExpectedTable load_expected(const std::filesystem::path& path)
{
    return parse_expected(read_file(path));
}

} // namespace ivbs
