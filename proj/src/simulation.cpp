#include "pmcdse/simulation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "pmcdse/analysis.h"
#include "pmcdse/errors.h"
#include "pmcdse/graph.h"

namespace pmcdse {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t streamSeed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master ^ (index * 0xD1B54A32D192ED03ULL);
    splitmix64(state);
    return splitmix64(state);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
    for (auto& word : s_) {
        word = splitmix64(seed);
    }
}

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t Xoshiro256::next() {
    auto const result = rotl(s_[1] * 5, 7) * 9;
    auto const t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

StateId sampleSuccessor(ConcreteDtmc const& chain, StateId from, double u) {
    auto const row = chain.matrix().row(from);
    double cumulative = 0.0;
    for (auto const& e : row) {
        cumulative += e.value;
        if (u < cumulative) {
            return e.column;
        }
    }
    // Rounding left u above the accumulated mass; take the last entry.
    return row.back().column;
}

namespace {

// Cumulative rows laid out flat for fast inverse-CDF sampling. Entry order
// equals the matrix entry order, so `entry` indexes aligned reward arrays.
class Sampler {
public:
    explicit Sampler(ConcreteDtmc const& chain) : matrix_(chain.matrix()) {
        cumulative_.reserve(matrix_.entryCount());
        for (StateId s = 0; s < matrix_.rowCount(); ++s) {
            double sum = 0.0;
            for (auto const& e : matrix_.row(s)) {
                sum += e.value;
                cumulative_.push_back(sum);
            }
        }
    }

    // Index of the sampled entry in the flat entry array.
    std::size_t entry(StateId from, double u) const {
        auto const begin = matrix_.rowOffset(from);
        auto const end = begin + matrix_.row(from).size();
        for (auto i = begin; i < end; ++i) {
            if (u < cumulative_[i]) {
                return i;
            }
        }
        return end - 1;
    }

    StateId column(StateId from, std::size_t entry) const {
        return matrix_.row(from)[entry - matrix_.rowOffset(from)].column;
    }

    StateId step(StateId from, Xoshiro256& rng) const { return column(from, entry(from, rng.uniform())); }

private:
    SparseMatrix const& matrix_;
    std::vector<double> cumulative_;
};

struct KahanSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double x) {
        double y = x - compensation;
        double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
    }
};

struct Partial {
    std::size_t n = 0;
    std::size_t censored = 0;
    KahanSum sum;
    KahanSum sumSquares;
};

// Chunk boundaries are fixed, and chunks are reduced in index order, so the
// result does not depend on how many workers run.
constexpr std::size_t kChunkSize = 8192;

// `sample(index, rng)` returns the sample value, or nullopt when censored.
template <typename Sample>
Partial runChunked(std::size_t count, std::uint64_t seed, std::size_t jobs, std::size_t chunkSize, Sample sample) {
    auto const chunks = (count + chunkSize - 1) / chunkSize;
    std::vector<Partial> partials(chunks);
    std::atomic<std::size_t> nextChunk{0};
    auto worker = [&] {
        for (auto c = nextChunk++; c < chunks; c = nextChunk++) {
            Partial p;
            auto const end = std::min(count, (c + 1) * chunkSize);
            for (auto i = c * chunkSize; i < end; ++i) {
                Xoshiro256 rng(streamSeed(seed, i));
                auto value = sample(i, rng);
                if (!value) {
                    ++p.censored;
                    continue;
                }
                ++p.n;
                p.sum.add(*value);
                p.sumSquares.add(*value * *value);
            }
            partials[c] = p;
        }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, chunks));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        for (std::size_t t = 0; t < jobs; ++t) {
            threads.emplace_back(worker);
        }
    }
    Partial total;
    for (auto const& p : partials) {
        total.n += p.n;
        total.censored += p.censored;
        total.sum.add(p.sum.sum);
        total.sumSquares.add(p.sumSquares.sum);
    }
    return total;
}

// Mean with the standard error of the mean (sample variance, n - 1).
Estimate meanEstimate(Partial const& p) {
    Estimate e;
    e.n = p.n;
    e.censored = p.censored;
    if (p.n == 0) {
        return e;
    }
    auto const n = static_cast<double>(p.n);
    e.mean = p.sum.sum / n;
    if (p.n > 1) {
        auto const variance = std::max(0.0, (p.sumSquares.sum - n * e.mean * e.mean) / (n - 1.0));
        e.stdError = std::sqrt(variance / n);
    }
    return e;
}

// Binomial estimate with std error sqrt(p(1-p)/n).
Estimate proportionEstimate(Partial const& p) {
    Estimate e;
    e.n = p.n;
    e.censored = p.censored;
    if (p.n == 0) {
        return e;
    }
    auto const n = static_cast<double>(p.n);
    e.mean = std::clamp(p.sum.sum / n, 0.0, 1.0);
    e.stdError = std::sqrt(e.mean * (1.0 - e.mean) / n);
    return e;
}

void checkConfig(SimConfig const& config) {
    if (config.paths < 1 || config.maxSteps < 1 || config.replications < 1 || config.occupancyHorizon < 1) {
        throw RangeViolation("simulation paths, steps, horizon and replications must be at least 1");
    }
    if (!(config.burnInFraction >= 0.0 && config.burnInFraction < 1.0)) {
        throw RangeViolation(fmt::format("burn-in fraction {} outside [0,1)", config.burnInFraction));
    }
}

// Per-step reward r(s) + r(s, s') aligned with the matrix entries.
std::vector<double> stepRewards(ConcreteDtmc const& chain, RewardStructure const& reward) {
    auto out = chain.alignedTransitionRewards(reward);
    auto const& matrix = chain.matrix();
    for (StateId s = 0; s < matrix.rowCount(); ++s) {
        auto const offset = matrix.rowOffset(s);
        for (std::size_t k = 0; k < matrix.row(s).size(); ++k) {
            out[offset + k] += reward.stateReward(s);
        }
    }
    return out;
}

// Long-run average of per-entry values along replicated trajectories.
Estimate longRunAverage(ConcreteDtmc const& chain, std::vector<double> const& entryValues, StateId from,
                        SimConfig const& config) {
    checkConfig(config);
    Sampler sampler(chain);
    auto const burnIn = static_cast<std::size_t>(std::floor(config.burnInFraction * config.occupancyHorizon));
    auto const measured = config.occupancyHorizon - burnIn;
    if (measured == 0) {
        throw RangeViolation("burn-in leaves no measured steps");
    }
    auto partial = runChunked(config.replications, config.seed, config.jobs, 1,
                              [&](std::size_t, Xoshiro256& rng) -> std::optional<double> {
                                  StateId s = from;
                                  for (std::size_t t = 0; t < burnIn; ++t) {
                                      s = sampler.step(s, rng);
                                  }
                                  KahanSum total;
                                  for (std::size_t t = 0; t < measured; ++t) {
                                      auto const entry = sampler.entry(s, rng.uniform());
                                      total.add(entryValues[entry]);
                                      s = sampler.column(s, entry);
                                  }
                                  return total.sum / static_cast<double>(measured);
                              });
    return meanEstimate(partial);
}

}  // namespace

std::vector<StateId> samplePath(ConcreteDtmc const& chain, std::uint64_t seed, std::size_t maxSteps) {
    Sampler sampler(chain);
    Xoshiro256 rng(seed);
    std::vector<StateId> path{chain.initial()};
    path.reserve(maxSteps + 1);
    for (std::size_t t = 0; t < maxSteps; ++t) {
        path.push_back(sampler.step(path.back(), rng));
    }
    return path;
}

Estimate estimateUntil(ConcreteDtmc const& chain, StateSet const& avoid, StateSet const& target, StateId from,
                       SimConfig const& config) {
    checkConfig(config);
    // States that can no longer reach `target` decide a path as a failure.
    auto const doomed = qualitativeUntil(chain.matrix(), ~avoid, target).prob0;
    Sampler sampler(chain);
    auto partial = runChunked(config.paths, config.seed, config.jobs, kChunkSize,
                              [&](std::size_t, Xoshiro256& rng) -> std::optional<double> {
                                  StateId s = from;
                                  for (std::size_t t = 0;; ++t) {
                                      if (target.contains(s)) {
                                          return 1.0;
                                      }
                                      if (avoid.contains(s) || doomed.contains(s)) {
                                          return 0.0;
                                      }
                                      if (t == config.maxSteps) {
                                          return std::nullopt;
                                      }
                                      s = sampler.step(s, rng);
                                  }
                              });
    return proportionEstimate(partial);
}

Estimate estimateNext(ConcreteDtmc const& chain, StateSet const& target, StateId from, SimConfig const& config) {
    checkConfig(config);
    Sampler sampler(chain);
    auto partial = runChunked(config.paths, config.seed, config.jobs, kChunkSize,
                              [&](std::size_t, Xoshiro256& rng) -> std::optional<double> {
                                  return target.contains(sampler.step(from, rng)) ? 1.0 : 0.0;
                              });
    return proportionEstimate(partial);
}

Estimate estimateReachReward(ConcreteDtmc const& chain, std::string const& rewardName, StateSet const& target,
                             StateId from, SimConfig const& config) {
    checkConfig(config);
    auto const n = chain.stateCount();
    auto const split = qualitativeUntil(chain.matrix(), StateSet(n, true), target);
    if (!split.prob1.contains(from)) {
        throw NotAlmostSureReach(reachProbability(chain, StateSet(n), target)[from]);
    }
    auto const values = stepRewards(chain, chain.reward(rewardName));
    Sampler sampler(chain);
    auto partial = runChunked(config.paths, config.seed, config.jobs, kChunkSize,
                              [&](std::size_t, Xoshiro256& rng) -> std::optional<double> {
                                  StateId s = from;
                                  double total = 0.0;
                                  for (std::size_t t = 0;; ++t) {
                                      if (target.contains(s)) {
                                          return total;
                                      }
                                      if (t == config.maxSteps) {
                                          return std::nullopt;
                                      }
                                      auto const entry = sampler.entry(s, rng.uniform());
                                      total += values[entry];
                                      s = sampler.column(s, entry);
                                  }
                              });
    return meanEstimate(partial);
}

Estimate estimateHittingTime(ConcreteDtmc const& chain, StateSet const& target, StateId from,
                             SimConfig const& config) {
    RewardStructure unit{"", std::vector<double>(chain.stateCount(), 1.0), {}};
    ConcreteDtmc counted(chain.stateNames(), chain.labels(), chain.initial(), chain.matrix(), {unit});
    return estimateReachReward(counted, "", target, from, config);
}

Estimate estimateOccupancy(ConcreteDtmc const& chain, StateSet const& states, StateId from,
                           SimConfig const& config) {
    auto const& matrix = chain.matrix();
    std::vector<double> indicator(matrix.entryCount(), 0.0);
    for (auto s : states.members()) {
        auto const offset = matrix.rowOffset(s);
        for (std::size_t k = 0; k < matrix.row(s).size(); ++k) {
            indicator[offset + k] = 1.0;
        }
    }
    return longRunAverage(chain, indicator, from, config);
}

Estimate estimateLongRunReward(ConcreteDtmc const& chain, std::string const& reward, StateId from,
                               SimConfig const& config) {
    return longRunAverage(chain, stepRewards(chain, chain.reward(reward)), from, config);
}

namespace {

Estimate estimateAt(ConcreteDtmc const& chain, Property const& prop, StateId anchor, SimConfig const& config) {
    return std::visit(
        [&](auto const& n) -> Estimate {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, property::UntilProbability>) {
                return estimateUntil(chain, ~satisfyingStates(chain, n.constraint), satisfyingStates(chain, n.target),
                                     anchor, config);
            } else if constexpr (std::is_same_v<T, property::NextProbability>) {
                return estimateNext(chain, satisfyingStates(chain, n.target), anchor, config);
            } else if constexpr (std::is_same_v<T, property::ReachReward>) {
                return estimateReachReward(chain, n.reward, satisfyingStates(chain, n.target), anchor, config);
            } else if constexpr (std::is_same_v<T, property::SteadyStateProbability>) {
                return estimateOccupancy(chain, satisfyingStates(chain, n.predicate), anchor, config);
            } else if constexpr (std::is_same_v<T, property::SteadyStateReward>) {
                return estimateLongRunReward(chain, n.reward, anchor, config);
            } else if constexpr (std::is_same_v<T, property::FilterState>) {
                auto states = satisfyingStates(chain, n.condition);
                if (states.count() != 1) {
                    throw FilterNotUnique(states.count());
                }
                return estimateAt(chain, n.inner, states.members().front(), config);
            } else {
                // Independent streams for the two factors.
                auto left = config;
                left.seed = streamSeed(config.seed, 0xA5A5A5A5ULL);
                auto right = config;
                right.seed = streamSeed(config.seed, 0x5A5A5A5AULL);
                auto a = estimateAt(chain, n.lhs, anchor, left);
                auto b = estimateAt(chain, n.rhs, anchor, right);
                Estimate e;
                e.mean = a.mean * b.mean;
                e.stdError = std::sqrt(b.mean * b.mean * a.stdError * a.stdError +
                                       a.mean * a.mean * b.stdError * b.stdError);
                e.n = std::min(a.n, b.n);
                e.censored = a.censored + b.censored;
                return e;
            }
        },
        prop.node());
}

}  // namespace

Estimate estimateProperty(ConcreteDtmc const& chain, Property const& property, SimConfig const& config) {
    return estimateAt(chain, property, chain.initial(), config);
}

}  // namespace pmcdse
