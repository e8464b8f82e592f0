#include "pmcdse/analysis.h"

#include <algorithm>
#include <limits>

#include "pmcdse/errors.h"
#include "pmcdse/graph.h"

namespace pmcdse {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Dense renumbering of the states in `subset`.
struct SubsetIndex {
    std::vector<StateId> states;
    std::vector<StateId> position;  // kNone outside the subset

    static constexpr StateId kNone = std::numeric_limits<StateId>::max();

    explicit SubsetIndex(StateSet const& subset) : states(subset.members()), position(subset.size(), kNone) {
        for (StateId i = 0; i < states.size(); ++i) {
            position[states[i]] = i;
        }
    }
};

// Restriction of `matrix` to `index.states` (rows and columns).
SparseMatrix restrict(SparseMatrix const& matrix, SubsetIndex const& index) {
    std::vector<std::pair<std::pair<StateId, StateId>, double>> triplets;
    for (StateId i = 0; i < index.states.size(); ++i) {
        for (auto const& e : matrix.row(index.states[i])) {
            auto j = index.position[e.column];
            if (j != SubsetIndex::kNone) {
                triplets.push_back({{i, j}, e.value});
            }
        }
    }
    auto const m = index.states.size();
    return SparseMatrix::fromTriplets(m, m, std::move(triplets));
}

}  // namespace

std::vector<double> reachProbability(ConcreteDtmc const& chain, StateSet const& avoid, StateSet const& target,
                                     SolverOptions const& options) {
    auto const n = chain.stateCount();
    auto const& matrix = chain.matrix();
    auto const constraint = ~avoid.minus(target);
    auto const split = qualitativeUntil(matrix, constraint, target);

    std::vector<double> x(n, 0.0);
    for (auto s : split.prob1.members()) {
        x[s] = 1.0;
    }
    auto const maybe = ~(split.prob0 | split.prob1);
    if (maybe.empty()) {
        return x;
    }

    SubsetIndex index(maybe);
    std::vector<double> b(index.states.size(), 0.0);
    for (StateId i = 0; i < index.states.size(); ++i) {
        for (auto const& e : matrix.row(index.states[i])) {
            if (split.prob1.contains(e.column)) {
                b[i] += e.value;
            }
        }
    }
    auto solution = solveIdentityMinus(restrict(matrix, index), b, options);
    for (StateId i = 0; i < index.states.size(); ++i) {
        x[index.states[i]] = std::clamp(solution[i], 0.0, 1.0);
    }
    return x;
}

std::vector<double> expectedTotalReward(ConcreteDtmc const& chain, std::string const& rewardName,
                                        StateSet const& target, SolverOptions const& options) {
    auto const& reward = chain.reward(rewardName);
    auto const n = chain.stateCount();
    auto const& matrix = chain.matrix();
    auto const split = qualitativeUntil(matrix, StateSet(n, true), target);

    std::vector<double> x(n, kInfinity);
    for (auto s : target.members()) {
        x[s] = 0.0;
    }
    auto const solve = split.prob1.minus(target);
    if (solve.empty()) {
        return x;
    }

    // Every successor of an almost-surely-reaching state reaches almost
    // surely as well, so the restricted system is closed.
    SubsetIndex index(solve);
    std::vector<double> b(index.states.size(), 0.0);
    for (StateId i = 0; i < index.states.size(); ++i) {
        auto s = index.states[i];
        b[i] = reward.stateReward(s);
        for (auto const& e : matrix.row(s)) {
            b[i] += e.value * reward.transitionReward(s, e.column);
        }
    }
    auto solution = solveIdentityMinus(restrict(matrix, index), b, options);
    for (StateId i = 0; i < index.states.size(); ++i) {
        x[index.states[i]] = std::max(solution[i], 0.0);
    }
    return x;
}

std::vector<double> stationaryDistribution(ConcreteDtmc const& chain, StateSet const& component,
                                           SolverOptions const& options) {
    auto const& matrix = chain.matrix();
    for (auto s : component.members()) {
        for (auto const& e : matrix.row(s)) {
            if (!component.contains(e.column)) {
                throw InvalidModel("stationary distribution requested for a component that is not closed");
            }
        }
    }
    SubsetIndex index(component);
    auto local = solveStationary(restrict(matrix, index), options);
    std::vector<double> pi(chain.stateCount(), 0.0);
    for (StateId i = 0; i < index.states.size(); ++i) {
        pi[index.states[i]] = local[i];
    }
    return pi;
}

std::vector<double> steadyState(ConcreteDtmc const& chain, StateId from, SolverOptions const& options) {
    auto const n = chain.stateCount();
    std::vector<double> result(n, 0.0);
    StateSet const none(n);
    for (auto const& bscc : bsccDecomposition(chain)) {
        double weight;
        if (bscc.contains(from)) {
            weight = 1.0;
        } else {
            weight = reachProbability(chain, none, bscc, options)[from];
        }
        if (weight == 0.0) {
            continue;
        }
        auto pi = stationaryDistribution(chain, bscc, options);
        for (StateId s = 0; s < n; ++s) {
            result[s] += weight * pi[s];
        }
    }
    return result;
}

double longRunAverageReward(ConcreteDtmc const& chain, std::string const& rewardName, StateId from,
                            SolverOptions const& options) {
    auto const& reward = chain.reward(rewardName);
    auto const distribution = steadyState(chain, from, options);
    auto const& matrix = chain.matrix();
    double total = 0.0;
    for (StateId s = 0; s < chain.stateCount(); ++s) {
        if (distribution[s] == 0.0) {
            continue;
        }
        double perStep = reward.stateReward(s);
        if (!reward.transitionRewards.empty()) {
            for (auto const& e : matrix.row(s)) {
                perStep += e.value * reward.transitionReward(s, e.column);
            }
        }
        total += distribution[s] * perStep;
    }
    return total;
}

double nextProbability(ConcreteDtmc const& chain, StateId from, StateSet const& target) {
    double sum = 0.0;
    for (auto const& e : chain.matrix().row(from)) {
        if (target.contains(e.column)) {
            sum += e.value;
        }
    }
    return sum;
}

}  // namespace pmcdse
