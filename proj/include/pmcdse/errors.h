#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmcdse {

// Base of every error raised by the library. `kind()` is a stable short name
// that reports and tests can match on.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string const& message);

    std::string const& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Malformed model, design-space, criteria or CSV input.
class FormatError : public Error {
public:
    FormatError(std::string source, std::size_t line, std::string const& message);

    std::string const& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

class InvalidModel : public Error {
public:
    explicit InvalidModel(std::string const& message);
};

class MissingParameter : public Error {
public:
    explicit MissingParameter(std::string name);
    std::string const& name() const noexcept { return name_; }

private:
    std::string name_;
};

class RowSumViolation : public Error {
public:
    RowSumViolation(std::string state, double sum);
    std::string const& state() const noexcept { return state_; }
    double sum() const noexcept { return sum_; }

private:
    std::string state_;
    double sum_;
};

class SolverFailure : public Error {
public:
    explicit SolverFailure(std::string const& message);
};

class UnknownReward : public Error {
public:
    explicit UnknownReward(std::string name);
};

class UnknownLabel : public Error {
public:
    explicit UnknownLabel(std::string name);
};

class FilterNotUnique : public Error {
public:
    explicit FilterNotUnique(std::size_t count);
    std::size_t count() const noexcept { return count_; }

private:
    std::size_t count_;
};

// Positioned parse error. `column` is 1-based; `line` is 0 when the error
// was raised on a single string rather than a file.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t column, std::vector<std::string> expected, std::string found,
                std::size_t line = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    std::vector<std::string> const& expected() const noexcept { return expected_; }
    std::string const& found() const noexcept { return found_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
    std::string found_;
};

// A property file can contain several malformed lines; all are reported.
class PropertyFileError : public Error {
public:
    explicit PropertyFileError(std::vector<SyntaxError> errors);
    std::vector<SyntaxError> const& errors() const noexcept { return errors_; }

private:
    std::vector<SyntaxError> errors_;
};

// Valid PCTL that lies outside the supported subset.
class UnknownConstruct : public Error {
public:
    UnknownConstruct(std::string construct, std::size_t column);
    std::string const& construct() const noexcept { return construct_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string construct_;
    std::size_t column_;
};

class UnknownPropertyId : public Error {
public:
    explicit UnknownPropertyId(std::string id);
};

class DuplicateParameter : public Error {
public:
    explicit DuplicateParameter(std::string name);
};

class InfinitePopulationValue : public Error {
public:
    explicit InfinitePopulationValue(std::string const& detail);
};

class WeightMismatch : public Error {
public:
    WeightMismatch(std::size_t values, std::size_t weights);
};

class WeightSumViolation : public Error {
public:
    explicit WeightSumViolation(double sum);
};

class RangeViolation : public Error {
public:
    explicit RangeViolation(std::string const& message);
};

class NotAlmostSureReach : public Error {
public:
    explicit NotAlmostSureReach(double probability);
};

class FewerThanThreeAxes : public Error {
public:
    explicit FewerThanThreeAxes(std::size_t axes);
};

}  // namespace pmcdse
