#include "ivbs/belief.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "ivbs/error.hpp"

namespace ivbs {

Frame::Frame(std::vector<std::string> hypotheses)
{
    if (hypotheses.empty()) {
        throw Error("frame must contain at least one hypothesis");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& h : hypotheses) {
        if (h.empty()) {
            throw Error("hypothesis names must be non-empty");
        }
        if (!seen.insert(h).second) {
            throw Error("duplicate hypothesis '" + h + "' in frame");
        }
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(hypotheses));
}

std::optional<std::size_t> Frame::index_of(std::string_view name) const noexcept
{
    const auto it = std::find(names_->begin(), names_->end(), name);
    if (it == names_->end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - names_->begin());
}

FocalElement::FocalElement(const Frame& frame, std::vector<std::size_t> members)
    : members_(std::move(members)), frame_size_(frame.size())
{
    if (members_.empty()) {
        throw Error("focal element must be non-empty");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.back() >= frame_size_) {
        throw Error("focal element member index " + std::to_string(members_.back()) +
                    " outside frame of size " + std::to_string(frame_size_));
    }
}

namespace {

std::vector<std::size_t> resolve(const Frame& frame, std::span<const std::string> names)
{
    std::vector<std::size_t> out;
    out.reserve(names.size());
    for (const auto& n : names) {
        const auto idx = frame.index_of(n);
        if (!idx) {
            throw Error("unknown hypothesis '" + n + "'");
        }
        out.push_back(*idx);
    }
    return out;
}

} // namespace

FocalElement::FocalElement(const Frame& frame, std::span<const std::string> names)
    : FocalElement(frame, resolve(frame, names))
{
}

bool FocalElement::contains(std::size_t index) const noexcept
{
    return std::binary_search(members_.begin(), members_.end(), index);
}

IntervalBeliefStructure::IntervalBeliefStructure(Frame frame, std::vector<MassEntry> entries)
    : frame_(std::move(frame)), entries_(std::move(entries))
{
    if (entries_.empty()) {
        throw Error("belief structure must have at least one focal element");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.focal.frame_size() != frame_.size()) {
            throw Error("focal element " + std::to_string(i + 1) + " belongs to a different frame");
        }
        if (!std::isfinite(e.lower) || !std::isfinite(e.upper)) {
            throw Error("focal element " + std::to_string(i + 1) + " has a non-finite mass");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (entries_[j].focal == e.focal) {
                throw Error("duplicate focal element at positions " + std::to_string(j + 1) +
                            " and " + std::to_string(i + 1));
            }
        }
    }
}

double IntervalBeliefStructure::lower_sum() const noexcept
{
    double s = 0.0;
    for (const auto& e : entries_) {
        s += e.lower;
    }
    return s;
}

double IntervalBeliefStructure::upper_sum() const noexcept
{
    double s = 0.0;
    for (const auto& e : entries_) {
        s += e.upper;
    }
    return s;
}

ValidityReport validate(const IntervalBeliefStructure& structure)
{
    ValidityReport report;
    const auto entries = structure.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (!(0.0 <= e.lower && e.lower <= e.upper && e.upper <= 1.0)) {
            std::ostringstream os;
            os << "condition 1: focal element " << i + 1 << " has mass [" << e.lower << ", "
               << e.upper << "], need 0 <= a <= b <= 1";
            report.violations.push_back({Violation::Kind::MassBounds, i, os.str()});
        } else if (e.upper == 0.0) {
            report.warnings.push_back("focal element " + std::to_string(i + 1) +
                                      " has zero mass interval [0, 0]");
        }
    }
    const double lo = structure.lower_sum();
    const double hi = structure.upper_sum();
    if (lo > 1.0 + kSumTolerance) {
        std::ostringstream os;
        os << "condition 2: sum of lower masses " << lo << " exceeds 1";
        report.violations.push_back({Violation::Kind::LowerSum, std::nullopt, os.str()});
    }
    if (hi < 1.0 - kSumTolerance) {
        std::ostringstream os;
        os << "condition 2: sum of upper masses " << hi << " is below 1";
        report.violations.push_back({Violation::Kind::UpperSum, std::nullopt, os.str()});
    }
    return report;
}

bool is_crisp(const IntervalBeliefStructure& structure) noexcept
{
    constexpr double tol = 1e-12;
    for (const auto& e : structure.entries()) {
        if (std::abs(e.upper - e.lower) > tol) {
            return false;
        }
    }
    return std::abs(structure.lower_sum() - 1.0) <= tol;
}

ObservationSet::ObservationSet(Frame frame, std::vector<IntervalBeliefStructure> observations,
                               std::vector<std::string> labels)
    : frame_(std::move(frame)), observations_(std::move(observations)), labels_(std::move(labels))
{
    if (observations_.empty()) {
        throw Error("observation set must contain at least one observation");
    }
    if (labels_.empty()) {
        for (std::size_t i = 0; i < observations_.size(); ++i) {
            labels_.push_back(std::to_string(i + 1));
        }
    }
    if (labels_.size() != observations_.size()) {
        throw Error("observation labels and observations differ in count");
    }
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        if (!(observations_[i].frame() == frame_)) {
            throw Error("observation '" + labels_[i] + "' uses a different frame");
        }
    }
}

void ObservationSet::require_valid() const
{
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const auto report = validate(observations_[i]);
        if (!report.ok()) {
            throw Error("observation '" + labels_[i] + "' is invalid: " +
                        report.violations.front().message);
        }
    }
}

} // namespace ivbs
