#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pmcdse/dtmc.h"

namespace pmcdse {

// ---------------------------------------------------------------------------
// State predicates: `s=NAME` atoms combined with !, &, | and `true`.
// ---------------------------------------------------------------------------

class Predicate;

namespace predicate {
struct True {
    bool operator==(True const&) const = default;
};
struct Label {
    std::string name;
    bool operator==(Label const&) const = default;
};
struct Not;
struct And;
struct Or;
}  // namespace predicate

// Immutable predicate tree with value semantics (subtrees are shared).
class Predicate {
public:
    using Node = std::variant<predicate::True, predicate::Label, predicate::Not, predicate::And, predicate::Or>;

    static Predicate truth();
    static Predicate label(std::string name);
    static Predicate negation(Predicate operand);
    static Predicate conjunction(Predicate lhs, Predicate rhs);
    static Predicate disjunction(Predicate lhs, Predicate rhs);

    Node const& node() const;

    friend bool operator==(Predicate const& a, Predicate const& b);

private:
    explicit Predicate(std::shared_ptr<Node const> node) : node_(std::move(node)) {}
    std::shared_ptr<Node const> node_;
};

namespace predicate {
struct Not {
    Predicate operand;
    bool operator==(Not const&) const = default;
};
struct And {
    Predicate lhs;
    Predicate rhs;
    bool operator==(And const&) const = default;
};
struct Or {
    Predicate lhs;
    Predicate rhs;
    bool operator==(Or const&) const = default;
};
}  // namespace predicate

inline Predicate::Node const& Predicate::node() const { return *node_; }

// Set of states satisfying `p`. Throws UnknownLabel for a label carried by no
// state of `chain`.
StateSet satisfyingStates(ConcreteDtmc const& chain, Predicate const& p);

// ---------------------------------------------------------------------------
// Properties.
// ---------------------------------------------------------------------------

class Property;

// `R{"r"}min=?` and `R{"r"}max=?` denote the same value on a DTMC; the
// qualifier is kept only so formatting reproduces the input.
enum class RewardQualifier { None, Min, Max };

namespace property {
// P=? [ constraint U target ]
struct UntilProbability {
    Predicate constraint;
    Predicate target;
    bool operator==(UntilProbability const&) const = default;
};
// P=? [ X target ]
struct NextProbability {
    Predicate target;
    bool operator==(NextProbability const&) const = default;
};
// R{"reward"}=? [ F target ]
struct ReachReward {
    std::string reward;
    Predicate target;
    RewardQualifier qualifier = RewardQualifier::None;
    bool operator==(ReachReward const&) const = default;
};
// S=? [ predicate ]
struct SteadyStateProbability {
    Predicate predicate;
    bool operator==(SteadyStateProbability const&) const = default;
};
// R{"reward"}=? [ S ]
struct SteadyStateReward {
    std::string reward;
    RewardQualifier qualifier = RewardQualifier::None;
    bool operator==(SteadyStateReward const&) const = default;
};
struct FilterState;
struct Product;
}  // namespace property

class Property {
public:
    using Node = std::variant<property::UntilProbability, property::NextProbability, property::ReachReward,
                              property::SteadyStateProbability, property::SteadyStateReward, property::FilterState,
                              property::Product>;

    Property(property::UntilProbability p);
    Property(property::NextProbability p);
    Property(property::ReachReward p);
    Property(property::SteadyStateProbability p);
    Property(property::SteadyStateReward p);
    Property(property::FilterState p);
    Property(property::Product p);

    Node const& node() const;

    friend bool operator==(Property const& a, Property const& b);

private:
    std::shared_ptr<Node const> node_;
};

namespace property {
// filter(state, inner, condition): `inner` evaluated at the single state
// satisfying `condition`.
struct FilterState {
    Property inner;
    Predicate condition;
    bool operator==(FilterState const&) const = default;
};
struct Product {
    Property lhs;
    Property rhs;
    bool operator==(Product const&) const = default;
};
}  // namespace property

inline Property::Node const& Property::node() const { return *node_; }

// Canonical text form; parseProperty(format(p)) == p.
std::string format(Predicate const& p);
std::string format(Property const& p);

// Throws SyntaxError (positioned, with the expected-token set) or
// UnknownConstruct for PCTL outside the supported subset.
Property parseProperty(std::string_view text);

struct PropertyEntry {
    std::string id;
    std::string source;
    Property property;
};

// Ordered, id-unique list of properties. Order defines the result-vector
// layout.
class PropertySet {
public:
    PropertySet() = default;
    explicit PropertySet(std::vector<PropertyEntry> entries);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::vector<PropertyEntry> const& entries() const noexcept { return entries_; }
    PropertyEntry const& operator[](std::size_t i) const { return entries_[i]; }

    std::optional<std::size_t> indexOf(std::string_view id) const;
    std::vector<std::string> ids() const;

private:
    std::vector<PropertyEntry> entries_;
};

// One property per non-comment line, optionally prefixed `phiK:` or `φK:`.
// Unprefixed lines get id `phiN` with N the 1-based position. All malformed
// lines are collected into one PropertyFileError.
PropertySet parsePropertyFile(std::string_view text);
PropertySet loadPropertyFile(std::filesystem::path const& path);

enum class Comparator { AtLeast, AtMost };

struct SuccessCriterion {
    std::string propertyId;
    Comparator comparator;
    double threshold;

    bool holds(double value) const { return comparator == Comparator::AtLeast ? value >= threshold : value <= threshold; }
    bool operator==(SuccessCriterion const&) const = default;
};

std::string format(SuccessCriterion const& c);

// Lines `<id> >= <value>` or `<id> <= <value>` (≥/≤ accepted). Throws
// FormatError for malformed lines and UnknownPropertyId for ids absent from
// `properties`.
std::vector<SuccessCriterion> parseSuccessCriteria(std::string_view text, PropertySet const& properties,
                                                   std::string const& source = "<criteria>");

}  // namespace pmcdse
