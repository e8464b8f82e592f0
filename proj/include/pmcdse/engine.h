#pragma once

#include <string>
#include <vector>

#include "pmcdse/analysis.h"
#include "pmcdse/errors.h"
#include "pmcdse/property.h"

namespace pmcdse {

enum class ValueKind { Probability, ExpectedReward, LongRunAverage };

std::string toString(ValueKind kind);

struct PropertyValue {
    double value;  // may be +infinity for expected rewards
    ValueKind kind;
};

// Values aligned with the ids of the PropertySet they were computed for.
struct PropertyVector {
    std::vector<std::string> ids;
    std::vector<PropertyValue> values;

    std::size_t size() const noexcept { return values.size(); }
    // Throws UnknownPropertyId.
    PropertyValue const& at(std::string_view id) const;
};

// Evaluates `property` at the chain's initial state.
//
//   until / next / reach-reward   read off at the anchor state
//   steady-state prob. / reward   long-run behaviour when starting there
//   filter(state, p, c)           p re-anchored at the unique c-state
//   p * q                         product, with 0 * inf defined as 0
//
// Throws UnknownLabel, UnknownReward, FilterNotUnique, SolverFailure.
PropertyValue evaluate(ConcreteDtmc const& chain, Property const& property, SolverOptions const& options = {});
PropertyValue evaluateAt(ConcreteDtmc const& chain, Property const& property, StateId anchor,
                         SolverOptions const& options = {});

// Error raised by evaluateAll, naming the failing property.
class PropertyEvaluationError : public Error {
public:
    PropertyEvaluationError(std::string propertyId, Error const& cause);
    std::string const& propertyId() const noexcept { return propertyId_; }
    std::string const& causeKind() const noexcept { return causeKind_; }

private:
    std::string propertyId_;
    std::string causeKind_;
};

// Evaluates every property in order. The first failure aborts with a
// PropertyEvaluationError.
PropertyVector evaluateAll(ConcreteDtmc const& chain, PropertySet const& properties, SolverOptions const& options = {});

// `value` rounded to 15 significant digits, the precision used in reports
// and in success-criteria comparisons.
double reportedValue(double value);

}  // namespace pmcdse
