#ifndef IVBS_BELIEF_HPP
#define IVBS_BELIEF_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivbs {

// Absolute tolerance applied to mass and probability sums.
inline constexpr double kSumTolerance = 1e-9;

// Ordered set of named hypotheses H_1..H_q. Order is fixed at construction
// and defines the hypothesis index used everywhere else. Copies share the
// underlying storage.
class Frame {
public:
    // Throws ivbs::Error on an empty list, an empty name or a duplicate name.
    explicit Frame(std::vector<std::string> hypotheses);

    std::size_t size() const noexcept { return names_->size(); }
    const std::string& name(std::size_t index) const { return names_->at(index); }
    std::span<const std::string> names() const noexcept { return *names_; }
    std::optional<std::size_t> index_of(std::string_view name) const noexcept;

    friend bool operator==(const Frame& a, const Frame& b) noexcept
    {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

// Non-empty subset of a frame, stored as strictly increasing hypothesis
// indices.
class FocalElement {
public:
    // Members may be given in any order; duplicates are collapsed. Throws
    // ivbs::Error when empty or when an index is outside the frame.
    FocalElement(const Frame& frame, std::vector<std::size_t> members);
    FocalElement(const Frame& frame, std::span<const std::string> names);

    std::span<const std::size_t> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(std::size_t index) const noexcept;
    // Number of hypotheses in the owning frame.
    std::size_t frame_size() const noexcept { return frame_size_; }
    bool is_whole_frame() const noexcept { return members_.size() == frame_size_; }

    friend bool operator==(const FocalElement&, const FocalElement&) = default;

private:
    std::vector<std::size_t> members_;
    std::size_t frame_size_;
};

struct MassEntry {
    FocalElement focal;
    double lower;
    double upper;

    friend bool operator==(const MassEntry&, const MassEntry&) = default;
};

// An interval-valued belief structure: interval masses [a_i, b_i] on
// distinct focal elements; subsets that are not listed carry zero mass. A
// crisp structure is the degenerate case a_i == b_i with sum 1.
//
// Construction only enforces structure (frame membership, no duplicates,
// finite numbers). The mass conditions are checked by validate(), so an
// invalid structure can still be loaded and reported on.
class IntervalBeliefStructure {
public:
    IntervalBeliefStructure(Frame frame, std::vector<MassEntry> entries);

    const Frame& frame() const noexcept { return frame_; }
    std::span<const MassEntry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    double lower_sum() const noexcept;
    double upper_sum() const noexcept;

    friend bool operator==(const IntervalBeliefStructure&, const IntervalBeliefStructure&) = default;

private:
    Frame frame_;
    std::vector<MassEntry> entries_;
};

struct Violation {
    enum class Kind {
        MassBounds,  // 0 <= a_i <= b_i <= 1 fails for entry `entry`
        LowerSum,    // sum of a_i exceeds 1
        UpperSum,    // sum of b_i is below 1
    };
    Kind kind;
    std::optional<std::size_t> entry;
    std::string message;
};

struct ValidityReport {
    std::vector<Violation> violations;
    // Non-fatal findings, e.g. entries with a_i == b_i == 0.
    std::vector<std::string> warnings;

    bool ok() const noexcept { return violations.empty(); }
};

ValidityReport validate(const IntervalBeliefStructure& structure);

// True when every entry is degenerate and the masses sum to one (1e-12).
bool is_crisp(const IntervalBeliefStructure& structure) noexcept;

// The p observations m_I = (m_I1, ..., m_Ip), all over one frame.
class ObservationSet {
public:
    // Throws ivbs::Error when `observations` is empty, when the labels and
    // observations differ in length, or when an observation uses a
    // different frame.
    ObservationSet(Frame frame, std::vector<IntervalBeliefStructure> observations,
                   std::vector<std::string> labels = {});

    const Frame& frame() const noexcept { return frame_; }
    std::span<const IntervalBeliefStructure> observations() const noexcept { return observations_; }
    std::span<const std::string> labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return observations_.size(); }
    const IntervalBeliefStructure& operator[](std::size_t i) const { return observations_.at(i); }

    // Throws ivbs::Error naming the first invalid observation.
    void require_valid() const;

    friend bool operator==(const ObservationSet&, const ObservationSet&) = default;

private:
    Frame frame_;
    std::vector<IntervalBeliefStructure> observations_;
    std::vector<std::string> labels_;
};

} // namespace ivbs

#endif
