#include "pmcdse/property.h"

#include <set>

#include <fmt/format.h>

#include "pmcdse/errors.h"
#include "pmcdse/model_io.h"
#include "pmcdse/text.h"

namespace pmcdse {

Predicate Predicate::truth() { return Predicate(std::make_shared<Node const>(predicate::True{})); }

Predicate Predicate::label(std::string name) {
    return Predicate(std::make_shared<Node const>(predicate::Label{std::move(name)}));
}

Predicate Predicate::negation(Predicate operand) {
    return Predicate(std::make_shared<Node const>(predicate::Not{std::move(operand)}));
}

Predicate Predicate::conjunction(Predicate lhs, Predicate rhs) {
    return Predicate(std::make_shared<Node const>(predicate::And{std::move(lhs), std::move(rhs)}));
}

Predicate Predicate::disjunction(Predicate lhs, Predicate rhs) {
    return Predicate(std::make_shared<Node const>(predicate::Or{std::move(lhs), std::move(rhs)}));
}

bool operator==(Predicate const& a, Predicate const& b) { return a.node_ == b.node_ || *a.node_ == *b.node_; }

StateSet satisfyingStates(ConcreteDtmc const& chain, Predicate const& p) {
    return std::visit(
        [&](auto const& n) -> StateSet {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, predicate::True>) {
                return StateSet(chain.stateCount(), true);
            } else if constexpr (std::is_same_v<T, predicate::Label>) {
                return chain.statesWithLabel(n.name);
            } else if constexpr (std::is_same_v<T, predicate::Not>) {
                return ~satisfyingStates(chain, n.operand);
            } else if constexpr (std::is_same_v<T, predicate::And>) {
                return satisfyingStates(chain, n.lhs) & satisfyingStates(chain, n.rhs);
            } else {
                return satisfyingStates(chain, n.lhs) | satisfyingStates(chain, n.rhs);
            }
        },
        p.node());
}

Property::Property(property::UntilProbability p) : node_(std::make_shared<Node const>(std::move(p))) {}
Property::Property(property::NextProbability p) : node_(std::make_shared<Node const>(std::move(p))) {}
Property::Property(property::ReachReward p) : node_(std::make_shared<Node const>(std::move(p))) {}
Property::Property(property::SteadyStateProbability p) : node_(std::make_shared<Node const>(std::move(p))) {}
Property::Property(property::SteadyStateReward p) : node_(std::make_shared<Node const>(std::move(p))) {}
Property::Property(property::FilterState p) : node_(std::make_shared<Node const>(std::move(p))) {}
Property::Property(property::Product p) : node_(std::make_shared<Node const>(std::move(p))) {}

bool operator==(Property const& a, Property const& b) { return a.node_ == b.node_ || *a.node_ == *b.node_; }

namespace {

bool isAtomic(Predicate const& p) {
    return std::holds_alternative<predicate::True>(p.node()) || std::holds_alternative<predicate::Label>(p.node());
}

std::string qualifierText(RewardQualifier q) {
    switch (q) {
        case RewardQualifier::Min:
            return "min";
        case RewardQualifier::Max:
            return "max";
        case RewardQualifier::None:
            break;
    }
    return "";
}

}  // namespace

std::string format(Predicate const& p) {
    return std::visit(
        [](auto const& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, predicate::True>) {
                return "true";
            } else if constexpr (std::is_same_v<T, predicate::Label>) {
                return "s=" + n.name;
            } else if constexpr (std::is_same_v<T, predicate::Not>) {
                auto inner = format(n.operand);
                bool wrap = std::holds_alternative<predicate::And>(n.operand.node()) ||
                            std::holds_alternative<predicate::Or>(n.operand.node());
                return wrap ? "!(" + inner + ")" : "!" + inner;
            } else if constexpr (std::is_same_v<T, predicate::And>) {
                auto lhs = format(n.lhs);
                auto rhs = format(n.rhs);
                if (std::holds_alternative<predicate::Or>(n.lhs.node())) {
                    lhs = "(" + lhs + ")";
                }
                if (std::holds_alternative<predicate::Or>(n.rhs.node()) ||
                    std::holds_alternative<predicate::And>(n.rhs.node())) {
                    rhs = "(" + rhs + ")";
                }
                return lhs + " & " + rhs;
            } else {
                auto rhs = format(n.rhs);
                if (std::holds_alternative<predicate::Or>(n.rhs.node())) {
                    rhs = "(" + rhs + ")";
                }
                return format(n.lhs) + " | " + rhs;
            }
        },
        p.node());
}

std::string format(Property const& p) {
    return std::visit(
        [](auto const& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, property::UntilProbability>) {
                auto constraint = format(n.constraint);
                if (!isAtomic(n.constraint)) {
                    constraint = "(" + constraint + ")";
                }
                return fmt::format("P=? [ {} U {} ]", constraint, format(n.target));
            } else if constexpr (std::is_same_v<T, property::NextProbability>) {
                return fmt::format("P=? [ X {} ]", format(n.target));
            } else if constexpr (std::is_same_v<T, property::ReachReward>) {
                return fmt::format("R{{\"{}\"}}{}=? [ F {} ]", n.reward, qualifierText(n.qualifier), format(n.target));
            } else if constexpr (std::is_same_v<T, property::SteadyStateProbability>) {
                return fmt::format("S=? [ {} ]", format(n.predicate));
            } else if constexpr (std::is_same_v<T, property::SteadyStateReward>) {
                return fmt::format("R{{\"{}\"}}{}=? [ S ]", n.reward, qualifierText(n.qualifier));
            } else if constexpr (std::is_same_v<T, property::FilterState>) {
                return fmt::format("filter(state, {}, {})", format(n.inner), format(n.condition));
            } else {
                auto rhs = format(n.rhs);
                if (std::holds_alternative<property::Product>(n.rhs.node())) {
                    rhs = "(" + rhs + ")";
                }
                return format(n.lhs) + " * " + rhs;
            }
        },
        p.node());
}

PropertySet::PropertySet(std::vector<PropertyEntry> entries) : entries_(std::move(entries)) {
    std::set<std::string> ids;
    for (auto const& e : entries_) {
        if (!ids.insert(e.id).second) {
            throw Error("DuplicatePropertyId", fmt::format("property id '{}' used twice", e.id));
        }
    }
}

std::optional<std::size_t> PropertySet::indexOf(std::string_view id) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::string> PropertySet::ids() const {
    std::vector<std::string> out;
    for (auto const& e : entries_) {
        out.push_back(e.id);
    }
    return out;
}

namespace {

constexpr std::string_view kPhi = "\xCF\x86";  // φ in UTF-8

// Accepts `phi3`-style identifiers and `φ3`, normalizing the latter to `phi3`.
std::optional<std::string> propertyId(std::string_view candidate) {
    candidate = text::trim(candidate);
    if (candidate.starts_with(kPhi)) {
        auto rest = candidate.substr(kPhi.size());
        if (rest.empty()) {
            return std::nullopt;
        }
        for (char c : rest) {
            if (!text::isIdentifierChar(c)) {
                return std::nullopt;
            }
        }
        return "phi" + std::string(rest);
    }
    if (text::isIdentifier(candidate)) {
        return std::string(candidate);
    }
    return std::nullopt;
}

}  // namespace

PropertySet parsePropertyFile(std::string_view text) {
    std::vector<PropertyEntry> entries;
    std::vector<SyntaxError> errors;
    std::set<std::string> ids;
    std::size_t lineNo = 0;
    for (auto const& rawLine : text::splitLines(text)) {
        ++lineNo;
        std::string_view line = text::stripComment(rawLine);
        if (text::trim(line).empty()) {
            continue;
        }
        std::string id = fmt::format("phi{}", entries.size() + errors.size() + 1);
        std::size_t offset = 0;
        if (auto colon = line.find(':'); colon != std::string_view::npos) {
            auto explicitId = propertyId(line.substr(0, colon));
            if (!explicitId) {
                errors.emplace_back(1, std::vector<std::string>{"property id"},
                                    fmt::format("'{}'", text::trim(line.substr(0, colon))), lineNo);
                continue;
            }
            id = *explicitId;
            offset = colon + 1;
        }
        auto body = line.substr(offset);
        if (!ids.insert(id).second) {
            errors.emplace_back(1, std::vector<std::string>{"unique property id"}, fmt::format("duplicate '{}'", id),
                                lineNo);
            continue;
        }
        try {
            auto property = parseProperty(body);
            entries.push_back({id, std::string(text::trim(body)), std::move(property)});
        } catch (SyntaxError const& e) {
            errors.emplace_back(e.column() + offset, e.expected(), e.found(), lineNo);
        } catch (UnknownConstruct const& e) {
            errors.emplace_back(e.column() + offset, std::vector<std::string>{"supported construct"},
                                fmt::format("unsupported '{}'", e.construct()), lineNo);
        }
    }
    if (!errors.empty()) {
        throw PropertyFileError(std::move(errors));
    }
    return PropertySet(std::move(entries));
}

PropertySet loadPropertyFile(std::filesystem::path const& path) {
    auto text = readTextFile(path);
    try {
        return parsePropertyFile(text);
    } catch (PropertyFileError const& e) {
        throw Error(e.kind(), fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string format(SuccessCriterion const& c) {
    return fmt::format("{} {} {}", c.propertyId, c.comparator == Comparator::AtLeast ? ">=" : "<=", c.threshold);
}

std::vector<SuccessCriterion> parseSuccessCriteria(std::string_view text, PropertySet const& properties,
                                                   std::string const& source) {
    static constexpr std::pair<std::string_view, Comparator> kOperators[] = {
        {">=", Comparator::AtLeast},
        {"<=", Comparator::AtMost},
        {"\xE2\x89\xA5", Comparator::AtLeast},  // ≥
        {"\xE2\x89\xA4", Comparator::AtMost},   // ≤
    };
    std::vector<SuccessCriterion> out;
    std::size_t lineNo = 0;
    for (auto const& rawLine : text::splitLines(text)) {
        ++lineNo;
        auto line = text::trim(text::stripComment(rawLine));
        if (line.empty()) {
            continue;
        }
        std::optional<SuccessCriterion> criterion;
        for (auto const& [symbol, comparator] : kOperators) {
            auto pos = line.find(symbol);
            if (pos == std::string_view::npos) {
                continue;
            }
            auto id = propertyId(line.substr(0, pos));
            auto value = text::parseDouble(line.substr(pos + symbol.size()));
            if (!id || !value) {
                break;
            }
            criterion = SuccessCriterion{*id, comparator, *value};
            break;
        }
        if (!criterion) {
            throw FormatError(source, lineNo, fmt::format("expected '<id> >= <value>' or '<id> <= <value>', found '{}'", line));
        }
        if (!properties.indexOf(criterion->propertyId)) {
            throw UnknownPropertyId(criterion->propertyId);
        }
        out.push_back(*criterion);
    }
    return out;
}

}  // namespace pmcdse
