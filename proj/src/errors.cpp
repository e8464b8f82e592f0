#include "pmcdse/errors.h"

#include <fmt/format.h>

namespace pmcdse {

Error::Error(std::string kind, std::string const& message) : std::runtime_error(message), kind_(std::move(kind)) {}

FormatError::FormatError(std::string source, std::size_t line, std::string const& message)
    : Error("FormatError", fmt::format("{}:{}: {}", source, line, message)), source_(std::move(source)), line_(line) {}

InvalidModel::InvalidModel(std::string const& message) : Error("InvalidModel", message) {}

MissingParameter::MissingParameter(std::string name)
    : Error("MissingParameter", fmt::format("no value assigned to parameter '{}'", name)), name_(std::move(name)) {}

RowSumViolation::RowSumViolation(std::string state, double sum)
    : Error("RowSumViolation", fmt::format("outgoing probabilities of state {} sum to {:.15g}", state, sum)),
      state_(std::move(state)),
      sum_(sum) {}

SolverFailure::SolverFailure(std::string const& message) : Error("SolverFailure", message) {}

UnknownReward::UnknownReward(std::string name) : Error("UnknownReward", fmt::format("unknown reward structure '{}'", name)) {}

UnknownLabel::UnknownLabel(std::string name) : Error("UnknownLabel", fmt::format("label '{}' is not attached to any state", name)) {}

FilterNotUnique::FilterNotUnique(std::size_t count)
    : Error("FilterNotUnique", fmt::format("filter condition must select exactly one state, selects {}", count)), count_(count) {}

namespace {
std::string describeSyntaxError(std::size_t line, std::size_t column, std::vector<std::string> const& expected,
                                std::string const& found) {
    std::string where = line == 0 ? fmt::format("column {}", column) : fmt::format("line {}, column {}", line, column);
    return fmt::format("syntax error at {}: expected {}, found {}", where, fmt::join(expected, " or "), found);
}
}  // namespace

SyntaxError::SyntaxError(std::size_t column, std::vector<std::string> expected, std::string found, std::size_t line)
    : Error("SyntaxError", describeSyntaxError(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {
std::string joinMessages(std::vector<SyntaxError> const& errors) {
    std::string out;
    for (auto const& e : errors) {
        if (!out.empty()) {
            out += '\n';
        }
        out += e.what();
    }
    return out;
}
}  // namespace

PropertyFileError::PropertyFileError(std::vector<SyntaxError> errors)
    : Error("SyntaxError", joinMessages(errors)), errors_(std::move(errors)) {}

UnknownConstruct::UnknownConstruct(std::string construct, std::size_t column)
    : Error("UnknownConstruct", fmt::format("unsupported construct '{}' at column {}", construct, column)),
      construct_(std::move(construct)),
      column_(column) {}

UnknownPropertyId::UnknownPropertyId(std::string id) : Error("UnknownPropertyId", fmt::format("unknown property id '{}'", id)) {}

DuplicateParameter::DuplicateParameter(std::string name)
    : Error("DuplicateParameter", fmt::format("parameter '{}' is assigned by more than one sub-system", name)) {}

InfinitePopulationValue::InfinitePopulationValue(std::string const& detail)
    : Error("InfinitePopulationValue", fmt::format("cannot range-map an infinite value: {}", detail)) {}

WeightMismatch::WeightMismatch(std::size_t values, std::size_t weights)
    : Error("WeightMismatch", fmt::format("{} values but {} weights", values, weights)) {}

WeightSumViolation::WeightSumViolation(double sum)
    : Error("WeightSumViolation", fmt::format("weights sum to {:.17g}, expected 1", sum)) {}

RangeViolation::RangeViolation(std::string const& message) : Error("RangeViolation", message) {}

NotAlmostSureReach::NotAlmostSureReach(double probability)
    : Error("NotAlmostSureReach",
            fmt::format("target is reached with probability {:.15g} < 1; expected hitting time is infinite", probability)) {}

FewerThanThreeAxes::FewerThanThreeAxes(std::size_t axes)
    : Error("FewerThanThreeAxes", fmt::format("a radar chart needs at least 3 axes, got {}", axes)) {}

}  // namespace pmcdse
