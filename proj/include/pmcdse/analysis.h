#pragma once

#include <vector>

#include "pmcdse/dtmc.h"
#include "pmcdse/linear_solver.h"

namespace pmcdse {

// Probability, per state, of reaching `target` without entering `avoid`.
// States in both sets count as target. Prob0/Prob1 states are found by graph
// analysis; only the remaining states go through the linear solver.
std::vector<double> reachProbability(ConcreteDtmc const& chain, StateSet const& avoid, StateSet const& target,
                                     SolverOptions const& options = {});

// Expected reward accumulated before first entering `target`, per state.
// +infinity wherever `target` is not reached almost surely; 0 on target.
// Throws UnknownReward.
std::vector<double> expectedTotalReward(ConcreteDtmc const& chain, std::string const& reward, StateSet const& target,
                                        SolverOptions const& options = {});

// Stationary distribution of the chain restricted to `component`, which must
// be a closed, irreducible set (a BSCC). Entries outside it are 0.
std::vector<double> stationaryDistribution(ConcreteDtmc const& chain, StateSet const& component,
                                           SolverOptions const& options = {});

// Long-run distribution when starting in `from`: BSCC reach probabilities
// times the stationary distribution inside each BSCC. Transient states get 0.
std::vector<double> steadyState(ConcreteDtmc const& chain, StateId from, SolverOptions const& options = {});
inline std::vector<double> steadyState(ConcreteDtmc const& chain, SolverOptions const& options = {}) {
    return steadyState(chain, chain.initial(), options);
}

// Long-run average reward per step when starting in `from`.
double longRunAverageReward(ConcreteDtmc const& chain, std::string const& reward, StateId from,
                            SolverOptions const& options = {});
inline double longRunAverageReward(ConcreteDtmc const& chain, std::string const& reward,
                                   SolverOptions const& options = {}) {
    return longRunAverageReward(chain, reward, chain.initial(), options);
}

// One-step probability of moving from `from` into `target`.
double nextProbability(ConcreteDtmc const& chain, StateId from, StateSet const& target);

}  // namespace pmcdse
