#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pmcdse/dtmc.h"
#include "pmcdse/engine.h"
#include "pmcdse/property.h"

namespace pmcdse {

struct Alternative {
    std::string name;
    ParameterAssignment assignment;
    // Literal text of each value as written in the design-space file.
    std::map<std::string, std::string> literals;
};

struct SubSystem {
    std::string name;
    std::vector<Alternative> alternatives;
};

// Ordered list of sub-systems. The constructor checks that every sub-system
// has at least one alternative, that all alternatives of a sub-system assign
// the same parameters, and that sub-systems never share a parameter
// (DuplicateParameter).
class DesignSpace {
public:
    DesignSpace() = default;
    explicit DesignSpace(std::vector<SubSystem> subsystems);

    std::vector<SubSystem> const& subsystems() const noexcept { return subsystems_; }
    // Product of the alternative counts.
    std::size_t size() const noexcept;
    std::vector<std::string> parameters() const;

private:
    std::vector<SubSystem> subsystems_;
};

// Grammar (see docs/formats.md):
//
//   subsystem SP
//   alt SP1 { p_s1_s1=0.496 p_s1_s2=0.496 p_s1_s7=0.008 }
DesignSpace parseDesignSpace(std::string_view text, std::string const& source = "<design-space>");
DesignSpace loadDesignSpace(std::filesystem::path const& path);

struct Configuration {
    std::size_t index;                      // 1-based theta index
    std::vector<std::string> alternatives;  // chosen alternative per sub-system
    ParameterAssignment assignment;

    std::string label() const;  // e.g. "SP2,MP1,OM1"
};

// Lexicographic Cartesian product, first sub-system most significant.
std::vector<Configuration> enumerate(DesignSpace const& space);

struct SuccessCheck {
    bool passed;
    std::vector<std::string> violated;
};

// Every criterion must hold on the reported (15-digit) value. Throws
// UnknownPropertyId.
SuccessCheck checkSuccess(PropertyVector const& values, std::vector<SuccessCriterion> const& criteria);

enum class VariantStatus { Success, Fail, Error };

std::string toString(VariantStatus status);

struct VariantOutcome {
    Configuration configuration;
    VariantStatus status;
    PropertyVector values;              // empty for Error
    std::vector<std::string> violated;  // for Fail
    std::string errorKind;              // for Error
    std::string errorMessage;
};

struct SweepResults {
    std::vector<std::string> subsystems;
    std::vector<std::string> propertyIds;
    std::vector<VariantOutcome> outcomes;  // ordered by theta index

    std::vector<VariantOutcome const*> success() const { return select(VariantStatus::Success); }
    std::vector<VariantOutcome const*> fail() const { return select(VariantStatus::Fail); }
    std::vector<VariantOutcome const*> errors() const { return select(VariantStatus::Error); }

private:
    std::vector<VariantOutcome const*> select(VariantStatus status) const;
};

// Checks that configuration-independent inputs fit together: the design
// space assigns exactly the model's parameters and every criterion refers to
// a known property. Throws on mismatch.
void checkSweepInputs(ParametricDtmc const& model, DesignSpace const& space, PropertySet const& properties,
                      std::vector<SuccessCriterion> const& criteria);

// Instantiates, verifies and classifies every configuration. Per-variant
// failures (row-sum violations, solver errors) are recorded as Error
// outcomes; the result is identical for any `jobs` >= 1. Property values are
// stored as reported values (15 significant digits).
SweepResults runSweep(ParametricDtmc const& model, DesignSpace const& space, PropertySet const& properties,
                      std::vector<SuccessCriterion> const& criteria, std::size_t jobs = 1,
                      SolverOptions const& options = {});

}  // namespace pmcdse
