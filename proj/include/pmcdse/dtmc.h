#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pmcdse/sparse_matrix.h"

namespace pmcdse {

// Tolerance on |sum of a row - 1| for a row to count as stochastic.
inline constexpr double kRowSumTolerance = 1e-9;

// A transition probability is either a constant or a reference to a
// parameter whose value is fixed per design variant.
struct ParameterRef {
    std::string name;
    bool operator==(ParameterRef const&) const = default;
};
using ProbabilityTerm = std::variant<double, ParameterRef>;

struct TransitionEntry {
    StateId source;
    StateId target;
    ProbabilityTerm probability;
};

struct RewardStructure {
    std::string name;
    // Indexed by StateId; absent states carry reward 0.
    std::vector<double> stateRewards;
    std::map<std::pair<StateId, StateId>, double> transitionRewards;

    double stateReward(StateId s) const { return s < stateRewards.size() ? stateRewards[s] : 0.0; }
    double transitionReward(StateId from, StateId to) const;
};

using ParameterAssignment = std::map<std::string, double>;

struct ParametricDtmc {
    std::vector<std::string> stateNames;
    std::vector<std::set<std::string>> labels;
    StateId initial = 0;
    std::vector<TransitionEntry> transitions;
    std::vector<RewardStructure> rewards;
    std::set<std::string> parameters;

    std::size_t stateCount() const noexcept { return stateNames.size(); }
    std::optional<StateId> findState(std::string const& name) const;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity;
    std::string code;
    std::optional<StateId> state;
    std::string message;
};

// Checks every structural invariant of a parametric model. An empty result
// means the model is well formed.
std::vector<Diagnostic> validateModel(ParametricDtmc const& model);

std::string formatDiagnostic(Diagnostic const& d);

// Immutable, row-stochastic chain for one parameter assignment.
class ConcreteDtmc {
public:
    // Throws RowSumViolation when a row is not stochastic within
    // kRowSumTolerance and InvalidModel for structural defects.
    ConcreteDtmc(std::vector<std::string> stateNames, std::vector<std::set<std::string>> labels, StateId initial,
                 SparseMatrix matrix, std::vector<RewardStructure> rewards);

    std::size_t stateCount() const noexcept { return stateNames_.size(); }
    StateId initial() const noexcept { return initial_; }
    SparseMatrix const& matrix() const noexcept { return matrix_; }
    std::vector<std::string> const& stateNames() const noexcept { return stateNames_; }
    std::vector<std::set<std::string>> const& labels() const noexcept { return labels_; }
    std::vector<RewardStructure> const& rewards() const noexcept { return rewards_; }

    bool hasLabel(std::string const& label) const;
    // Throws UnknownLabel if no state carries `label`.
    StateSet statesWithLabel(std::string const& label) const;
    // Throws UnknownReward.
    RewardStructure const& reward(std::string const& name) const;

    // Transition rewards laid out parallel to the matrix entries.
    std::vector<double> alignedTransitionRewards(RewardStructure const& reward) const;

    ConcreteDtmc withInitial(StateId s) const;

private:
    std::vector<std::string> stateNames_;
    std::vector<std::set<std::string>> labels_;
    StateId initial_;
    SparseMatrix matrix_;
    std::vector<RewardStructure> rewards_;
};

// Substitutes `assignment` into `model`. Throws MissingParameter when a
// referenced parameter has no value and RowSumViolation when a resulting row
// is not stochastic.
ConcreteDtmc instantiate(ParametricDtmc const& model, ParameterAssignment const& assignment);

}  // namespace pmcdse
