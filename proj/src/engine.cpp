#include "pmcdse/engine.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <fmt/format.h>

#include "pmcdse/errors.h"

namespace pmcdse {

std::string toString(ValueKind kind) {
    switch (kind) {
        case ValueKind::Probability:
            return "probability";
        case ValueKind::ExpectedReward:
            return "expected-reward";
        case ValueKind::LongRunAverage:
            return "long-run-average";
    }
    return "unknown";
}

PropertyValue const& PropertyVector::at(std::string_view id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] == id) {
            return values[i];
        }
    }
    throw UnknownPropertyId(std::string(id));
}

namespace {

ValueKind productKind(ValueKind a, ValueKind b) {
    if (a == ValueKind::Probability) {
        return b;
    }
    if (b == ValueKind::Probability || a == b) {
        return a;
    }
    return ValueKind::ExpectedReward;
}

double product(double a, double b) {
    if (a == 0.0 || b == 0.0) {
        return 0.0;
    }
    return a * b;
}

}  // namespace

PropertyValue evaluateAt(ConcreteDtmc const& chain, Property const& prop, StateId anchor, SolverOptions const& options) {
    return std::visit(
        [&](auto const& n) -> PropertyValue {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, property::UntilProbability>) {
                auto avoid = ~satisfyingStates(chain, n.constraint);
                auto target = satisfyingStates(chain, n.target);
                return {reachProbability(chain, avoid, target, options)[anchor], ValueKind::Probability};
            } else if constexpr (std::is_same_v<T, property::NextProbability>) {
                return {nextProbability(chain, anchor, satisfyingStates(chain, n.target)), ValueKind::Probability};
            } else if constexpr (std::is_same_v<T, property::ReachReward>) {
                auto target = satisfyingStates(chain, n.target);
                return {expectedTotalReward(chain, n.reward, target, options)[anchor], ValueKind::ExpectedReward};
            } else if constexpr (std::is_same_v<T, property::SteadyStateProbability>) {
                auto states = satisfyingStates(chain, n.predicate);
                auto distribution = steadyState(chain, anchor, options);
                double sum = 0.0;
                for (auto s : states.members()) {
                    sum += distribution[s];
                }
                return {std::min(sum, 1.0), ValueKind::Probability};
            } else if constexpr (std::is_same_v<T, property::SteadyStateReward>) {
                return {longRunAverageReward(chain, n.reward, anchor, options), ValueKind::LongRunAverage};
            } else if constexpr (std::is_same_v<T, property::FilterState>) {
                auto states = satisfyingStates(chain, n.condition);
                if (states.count() != 1) {
                    throw FilterNotUnique(states.count());
                }
                return evaluateAt(chain, n.inner, states.members().front(), options);
            } else {
                auto lhs = evaluateAt(chain, n.lhs, anchor, options);
                auto rhs = evaluateAt(chain, n.rhs, anchor, options);
                return {product(lhs.value, rhs.value), productKind(lhs.kind, rhs.kind)};
            }
        },
        prop.node());
}

PropertyValue evaluate(ConcreteDtmc const& chain, Property const& property, SolverOptions const& options) {
    return evaluateAt(chain, property, chain.initial(), options);
}

PropertyEvaluationError::PropertyEvaluationError(std::string propertyId, Error const& cause)
    : Error(cause.kind(), fmt::format("property {}: {}", propertyId, cause.what())),
      propertyId_(std::move(propertyId)),
      causeKind_(cause.kind()) {}

PropertyVector evaluateAll(ConcreteDtmc const& chain, PropertySet const& properties, SolverOptions const& options) {
    PropertyVector out;
    out.ids.reserve(properties.size());
    out.values.reserve(properties.size());
    for (auto const& entry : properties.entries()) {
        try {
            out.values.push_back(evaluate(chain, entry.property, options));
        } catch (Error const& e) {
            throw PropertyEvaluationError(entry.id, e);
        }
        out.ids.push_back(entry.id);
    }
    return out;
}

double reportedValue(double value) {
    if (!std::isfinite(value)) {
        return value;
    }
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    return std::strtod(buffer, nullptr);
}

}  // namespace pmcdse
