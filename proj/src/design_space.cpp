#include "pmcdse/design_space.h"

#include <atomic>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "pmcdse/errors.h"
#include "pmcdse/model_io.h"
#include "pmcdse/text.h"

namespace pmcdse {

DesignSpace::DesignSpace(std::vector<SubSystem> subsystems) : subsystems_(std::move(subsystems)) {
    std::set<std::string> seen;
    std::set<std::string> names;
    for (auto const& sub : subsystems_) {
        if (!names.insert(sub.name).second) {
            throw Error("DuplicateSubSystem", fmt::format("sub-system '{}' declared twice", sub.name));
        }
        if (sub.alternatives.empty()) {
            throw Error("EmptySubSystem", fmt::format("sub-system '{}' has no alternatives", sub.name));
        }
        std::set<std::string> params;
        for (auto const& [name, value] : sub.alternatives.front().assignment) {
            params.insert(name);
        }
        for (auto const& alt : sub.alternatives) {
            std::set<std::string> altParams;
            for (auto const& [name, value] : alt.assignment) {
                altParams.insert(name);
            }
            if (altParams != params) {
                throw Error("InconsistentAlternatives",
                            fmt::format("alternative '{}' of sub-system '{}' assigns a different parameter set",
                                        alt.name, sub.name));
            }
        }
        for (auto const& p : params) {
            if (!seen.insert(p).second) {
                throw DuplicateParameter(p);
            }
        }
    }
}

std::size_t DesignSpace::size() const noexcept {
    std::size_t n = subsystems_.empty() ? 0 : 1;
    for (auto const& sub : subsystems_) {
        n *= sub.alternatives.size();
    }
    return n;
}

std::vector<std::string> DesignSpace::parameters() const {
    std::vector<std::string> out;
    for (auto const& sub : subsystems_) {
        for (auto const& [name, value] : sub.alternatives.front().assignment) {
            out.push_back(name);
        }
    }
    return out;
}

namespace {

struct DsToken {
    std::string text;
    std::size_t line;
};

std::vector<DsToken> lexDesignSpace(std::string_view input) {
    std::vector<DsToken> tokens;
    std::size_t lineNo = 0;
    for (auto const& rawLine : text::splitLines(input)) {
        ++lineNo;
        auto line = text::stripComment(rawLine);
        std::string current;
        auto flush = [&] {
            if (!current.empty()) {
                tokens.push_back({current, lineNo});
                current.clear();
            }
        };
        for (char c : line) {
            if (text::isSpace(c)) {
                flush();
            } else if (c == '{' || c == '}' || c == '=') {
                flush();
                tokens.push_back({std::string(1, c), lineNo});
            } else {
                current += c;
            }
        }
        flush();
    }
    return tokens;
}

}  // namespace

DesignSpace parseDesignSpace(std::string_view input, std::string const& source) {
    auto tokens = lexDesignSpace(input);
    std::vector<SubSystem> subsystems;
    std::size_t pos = 0;
    std::size_t lastLine = 0;

    auto fail = [&](std::string const& msg) -> FormatError {
        return FormatError(source, pos < tokens.size() ? tokens[pos].line : lastLine, msg);
    };
    auto next = [&](std::string_view what) -> std::string const& {
        if (pos >= tokens.size()) {
            throw fail(fmt::format("expected {}, found end of file", what));
        }
        lastLine = tokens[pos].line;
        return tokens[pos++].text;
    };
    auto expect = [&](std::string_view symbol) {
        auto const& t = next(fmt::format("'{}'", symbol));
        if (t != symbol) {
            --pos;
            throw fail(fmt::format("expected '{}', found '{}'", symbol, t));
        }
    };
    auto identifier = [&](std::string_view what) {
        auto const& t = next(what);
        if (!text::isIdentifier(t)) {
            --pos;
            throw fail(fmt::format("expected {}, found '{}'", what, t));
        }
        return t;
    };

    while (pos < tokens.size()) {
        auto const& keyword = tokens[pos].text;
        if (keyword == "subsystem") {
            ++pos;
            subsystems.push_back({identifier("sub-system name"), {}});
        } else if (keyword == "alt") {
            if (subsystems.empty()) {
                throw fail("'alt' before any 'subsystem'");
            }
            ++pos;
            Alternative alt{identifier("alternative name"), {}, {}};
            for (auto const& existing : subsystems.back().alternatives) {
                if (existing.name == alt.name) {
                    --pos;
                    throw fail(fmt::format("alternative '{}' declared twice", alt.name));
                }
            }
            expect("{");
            while (pos < tokens.size() && tokens[pos].text != "}") {
                auto name = identifier("parameter name");
                expect("=");
                auto const& literal = next("a probability");
                auto value = text::parseDouble(literal);
                if (!value) {
                    --pos;
                    throw fail(fmt::format("expected a number, found '{}'", literal));
                }
                if (!alt.assignment.emplace(name, *value).second) {
                    throw fail(fmt::format("parameter '{}' assigned twice in '{}'", name, alt.name));
                }
                alt.literals.emplace(name, literal);
            }
            expect("}");
            subsystems.back().alternatives.push_back(std::move(alt));
        } else {
            throw fail(fmt::format("expected 'subsystem' or 'alt', found '{}'", keyword));
        }
    }
    return DesignSpace(std::move(subsystems));
}

DesignSpace loadDesignSpace(std::filesystem::path const& path) {
    return parseDesignSpace(readTextFile(path), path.string());
}

std::string Configuration::label() const { return fmt::format("{}", fmt::join(alternatives, ",")); }

std::vector<Configuration> enumerate(DesignSpace const& space) {
    auto const& subs = space.subsystems();
    std::vector<Configuration> out;
    if (subs.empty()) {
        return out;
    }
    out.reserve(space.size());
    std::vector<std::size_t> choice(subs.size(), 0);
    for (std::size_t index = 1;; ++index) {
        Configuration c{index, {}, {}};
        for (std::size_t i = 0; i < subs.size(); ++i) {
            auto const& alt = subs[i].alternatives[choice[i]];
            c.alternatives.push_back(alt.name);
            for (auto const& [name, value] : alt.assignment) {
                if (!c.assignment.emplace(name, value).second) {
                    throw DuplicateParameter(name);
                }
            }
        }
        out.push_back(std::move(c));
        // Odometer increment, last sub-system fastest.
        std::size_t i = subs.size();
        while (i > 0) {
            --i;
            if (++choice[i] < subs[i].alternatives.size()) {
                break;
            }
            choice[i] = 0;
            if (i == 0) {
                return out;
            }
        }
    }
}

SuccessCheck checkSuccess(PropertyVector const& values, std::vector<SuccessCriterion> const& criteria) {
    SuccessCheck result{true, {}};
    for (auto const& c : criteria) {
        auto const& v = values.at(c.propertyId);
        if (!c.holds(reportedValue(v.value))) {
            result.passed = false;
            result.violated.push_back(c.propertyId);
        }
    }
    return result;
}

std::string toString(VariantStatus status) {
    switch (status) {
        case VariantStatus::Success:
            return "pass";
        case VariantStatus::Fail:
            return "fail";
        case VariantStatus::Error:
            return "error";
    }
    return "unknown";
}

std::vector<VariantOutcome const*> SweepResults::select(VariantStatus status) const {
    std::vector<VariantOutcome const*> out;
    for (auto const& o : outcomes) {
        if (o.status == status) {
            out.push_back(&o);
        }
    }
    return out;
}

void checkSweepInputs(ParametricDtmc const& model, DesignSpace const& space, PropertySet const& properties,
                      std::vector<SuccessCriterion> const& criteria) {
    auto const assigned = space.parameters();
    std::set<std::string> assignedSet(assigned.begin(), assigned.end());
    for (auto const& p : model.parameters) {
        if (!assignedSet.contains(p)) {
            throw MissingParameter(p);
        }
    }
    for (auto const& p : assigned) {
        if (!model.parameters.contains(p)) {
            throw Error("UnknownParameter", fmt::format("design space assigns undeclared parameter '{}'", p));
        }
    }
    for (auto const& c : criteria) {
        if (!properties.indexOf(c.propertyId)) {
            throw UnknownPropertyId(c.propertyId);
        }
    }
}

namespace {

VariantOutcome evaluateVariant(ParametricDtmc const& model, Configuration const& configuration,
                               PropertySet const& properties, std::vector<SuccessCriterion> const& criteria,
                               SolverOptions const& options) {
    VariantOutcome outcome{configuration, VariantStatus::Error, {}, {}, {}, {}};
    try {
        auto chain = instantiate(model, configuration.assignment);
        auto values = evaluateAll(chain, properties, options);
        for (auto& v : values.values) {
            v.value = reportedValue(v.value);
        }
        auto check = checkSuccess(values, criteria);
        outcome.status = check.passed ? VariantStatus::Success : VariantStatus::Fail;
        outcome.values = std::move(values);
        outcome.violated = std::move(check.violated);
    } catch (Error const& e) {
        outcome.errorKind = e.kind();
        outcome.errorMessage = e.what();
    } catch (std::exception const& e) {
        outcome.errorKind = "InternalError";
        outcome.errorMessage = e.what();
    }
    return outcome;
}

}  // namespace

SweepResults runSweep(ParametricDtmc const& model, DesignSpace const& space, PropertySet const& properties,
                      std::vector<SuccessCriterion> const& criteria, std::size_t jobs, SolverOptions const& options) {
    checkSweepInputs(model, space, properties, criteria);
    auto const configurations = enumerate(space);

    SweepResults results;
    for (auto const& sub : space.subsystems()) {
        results.subsystems.push_back(sub.name);
    }
    results.propertyIds = properties.ids();
    results.outcomes.resize(configurations.size());

    std::atomic<std::size_t> nextIndex{0};
    auto worker = [&] {
        for (auto i = nextIndex++; i < configurations.size(); i = nextIndex++) {
            results.outcomes[i] = evaluateVariant(model, configurations[i], properties, criteria, options);
        }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, configurations.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        for (std::size_t t = 0; t < jobs; ++t) {
            threads.emplace_back(worker);
        }
    }
    return results;
}

}  // namespace pmcdse
