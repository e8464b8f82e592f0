#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmcdse/dtmc.h"
#include "pmcdse/engine.h"
#include "pmcdse/property.h"

namespace pmcdse {

// xoshiro256** seeded through splitmix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t next();
    // Uniform on [0,1) with 53 random bits.
    double uniform();

private:
    std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

// Seed of the i-th independent stream derived from `master`.
std::uint64_t streamSeed(std::uint64_t master, std::uint64_t index);

struct SimConfig {
    std::uint64_t seed = 1;
    std::size_t paths = 100000;
    std::size_t maxSteps = 100000;
    std::size_t occupancyHorizon = 1000000;
    std::size_t replications = 20;
    double burnInFraction = 0.01;
    std::size_t jobs = 1;  // never changes the result
};

struct Estimate {
    double mean = 0.0;
    double stdError = 0.0;
    std::size_t n = 0;          // paths or replications used
    std::size_t censored = 0;   // paths that exhausted maxSteps undecided
};

// Successor of `from` drawn by inverse CDF over the row in column order.
StateId sampleSuccessor(ConcreteDtmc const& chain, StateId from, double u);

// States visited by a path of `maxSteps` transitions from the initial state.
std::vector<StateId> samplePath(ConcreteDtmc const& chain, std::uint64_t seed, std::size_t maxSteps);

// Fraction of paths from `from` that reach `target` without visiting `avoid`
// first; paths entering a state that can no longer reach `target` count as
// failures. Paths still undecided after maxSteps are censored and excluded from
// n; std error sqrt(p(1-p)/n).
Estimate estimateUntil(ConcreteDtmc const& chain, StateSet const& avoid, StateSet const& target, StateId from,
                       SimConfig const& config);

// Fraction of single steps from `from` that land in `target`.
Estimate estimateNext(ConcreteDtmc const& chain, StateSet const& target, StateId from, SimConfig const& config);

// Mean reward accumulated before the first visit to `target`. Refuses with
// NotAlmostSureReach unless `target` is reached with probability 1.
Estimate estimateReachReward(ConcreteDtmc const& chain, std::string const& reward, StateSet const& target,
                             StateId from, SimConfig const& config);

// Mean number of steps before the first visit to `target`.
Estimate estimateHittingTime(ConcreteDtmc const& chain, StateSet const& target, StateId from,
                             SimConfig const& config);

// Fraction of steps spent in `states` along a trajectory of
// occupancyHorizon steps after a burn-in of burnInFraction * horizon steps,
// averaged over `replications` independent trajectories.
Estimate estimateOccupancy(ConcreteDtmc const& chain, StateSet const& states, StateId from,
                           SimConfig const& config);

// Long-run average reward per step, estimated like estimateOccupancy.
Estimate estimateLongRunReward(ConcreteDtmc const& chain, std::string const& reward, StateId from,
                               SimConfig const& config);

// Monte Carlo counterpart of evaluate(): every supported property class is
// estimated at the chain's initial state. Products combine the estimates of
// their factors with the delta method.
Estimate estimateProperty(ConcreteDtmc const& chain, Property const& property, SimConfig const& config);

}  // namespace pmcdse
