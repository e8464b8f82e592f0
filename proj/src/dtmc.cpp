#include "pmcdse/dtmc.h"

#include <cmath>
#include <deque>

#include <fmt/format.h>

#include "pmcdse/errors.h"

namespace pmcdse {

double RewardStructure::transitionReward(StateId from, StateId to) const {
    auto it = transitionRewards.find({from, to});
    return it == transitionRewards.end() ? 0.0 : it->second;
}

std::optional<StateId> ParametricDtmc::findState(std::string const& name) const {
    for (StateId s = 0; s < stateNames.size(); ++s) {
        if (stateNames[s] == name) {
            return s;
        }
    }
    return std::nullopt;
}

namespace {

std::string stateName(ParametricDtmc const& model, StateId s) {
    return s < model.stateNames.size() ? model.stateNames[s] : fmt::format("#{}", s);
}

bool validProbability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

std::vector<Diagnostic> validateModel(ParametricDtmc const& model) {
    std::vector<Diagnostic> out;
    auto const n = model.stateCount();
    auto error = [&](std::string code, std::optional<StateId> s, std::string msg) {
        out.push_back({Severity::Error, std::move(code), s, std::move(msg)});
    };

    if (n == 0) {
        error("empty-model", std::nullopt, "model declares no states");
        return out;
    }
    if (model.initial >= n) {
        error("invalid-initial", std::nullopt, fmt::format("initial state index {} out of range", model.initial));
    }

    std::vector<bool> hasOutgoing(n, false);
    std::vector<bool> allConstant(n, true);
    std::vector<double> constantSum(n, 0.0);
    std::set<std::pair<StateId, StateId>> seen;
    std::vector<std::vector<StateId>> successors(n);

    for (auto const& t : model.transitions) {
        if (t.source >= n || t.target >= n) {
            error("dangling-reference", std::nullopt,
                  fmt::format("transition {} -> {} references an undeclared state", t.source, t.target));
            continue;
        }
        hasOutgoing[t.source] = true;
        if (!seen.insert({t.source, t.target}).second) {
            error("duplicate-transition", t.source,
                  fmt::format("transition {} -> {} declared more than once", stateName(model, t.source),
                              stateName(model, t.target)));
        }
        if (auto const* c = std::get_if<double>(&t.probability)) {
            if (!validProbability(*c)) {
                error("probability-out-of-range", t.source,
                      fmt::format("probability {} on {} -> {} is outside [0,1]", *c, stateName(model, t.source),
                                  stateName(model, t.target)));
            }
            constantSum[t.source] += *c;
            if (*c > 0.0) {
                successors[t.source].push_back(t.target);
            }
        } else {
            auto const& p = std::get<ParameterRef>(t.probability);
            allConstant[t.source] = false;
            successors[t.source].push_back(t.target);
            if (!model.parameters.contains(p.name)) {
                error("unknown-parameter", t.source,
                      fmt::format("transition {} -> {} references undeclared parameter '{}'",
                                  stateName(model, t.source), stateName(model, t.target), p.name));
            }
        }
    }

    for (StateId s = 0; s < n; ++s) {
        if (!hasOutgoing[s]) {
            error("dangling-state", s, fmt::format("state {} has no outgoing transitions", stateName(model, s)));
        } else if (allConstant[s] && std::abs(constantSum[s] - 1.0) > kRowSumTolerance) {
            error("row-sum", s,
                  fmt::format("outgoing probabilities of state {} sum to {:.15g}", stateName(model, s), constantSum[s]));
        }
    }

    std::set<std::string> rewardNames;
    for (auto const& r : model.rewards) {
        if (!rewardNames.insert(r.name).second) {
            error("duplicate-reward", std::nullopt, fmt::format("reward structure '{}' declared twice", r.name));
        }
        for (StateId s = 0; s < r.stateRewards.size(); ++s) {
            if (!std::isfinite(r.stateRewards[s]) || r.stateRewards[s] < 0.0) {
                error("invalid-reward", s,
                      fmt::format("reward '{}' on state {} must be finite and non-negative", r.name,
                                  stateName(model, s)));
            }
        }
        for (auto const& [edge, value] : r.transitionRewards) {
            if (!std::isfinite(value) || value < 0.0) {
                error("invalid-reward", edge.first,
                      fmt::format("reward '{}' on {} -> {} must be finite and non-negative", r.name,
                                  stateName(model, edge.first), stateName(model, edge.second)));
            }
        }
    }

    if (model.initial < n) {
        std::vector<bool> reached(n, false);
        std::deque<StateId> queue{model.initial};
        reached[model.initial] = true;
        while (!queue.empty()) {
            auto s = queue.front();
            queue.pop_front();
            for (auto t : successors[s]) {
                if (!reached[t]) {
                    reached[t] = true;
                    queue.push_back(t);
                }
            }
        }
        for (StateId s = 0; s < n; ++s) {
            if (!reached[s]) {
                out.push_back({Severity::Warning, "unreachable", s,
                               fmt::format("state {} is unreachable from the initial state", stateName(model, s))});
            }
        }
    }
    return out;
}

std::string formatDiagnostic(Diagnostic const& d) {
    return fmt::format("{} [{}] {}", d.severity == Severity::Error ? "error" : "warning", d.code, d.message);
}

ConcreteDtmc::ConcreteDtmc(std::vector<std::string> stateNames, std::vector<std::set<std::string>> labels,
                           StateId initial, SparseMatrix matrix, std::vector<RewardStructure> rewards)
    : stateNames_(std::move(stateNames)),
      labels_(std::move(labels)),
      initial_(initial),
      matrix_(std::move(matrix)),
      rewards_(std::move(rewards)) {
    auto const n = stateNames_.size();
    if (n == 0 || matrix_.rowCount() != n || matrix_.columnCount() != n) {
        throw InvalidModel("transition matrix does not match the state count");
    }
    if (labels_.size() != n) {
        labels_.resize(n);
    }
    if (initial_ >= n) {
        throw InvalidModel("initial state out of range");
    }
    for (StateId s = 0; s < n; ++s) {
        for (auto const& e : matrix_.row(s)) {
            if (!validProbability(e.value)) {
                throw RangeViolation(fmt::format("probability {} on {} -> {} is outside [0,1]", e.value,
                                                 stateNames_[s], stateNames_[e.column]));
            }
        }
        double sum = matrix_.rowSum(s);
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            throw RowSumViolation(stateNames_[s], sum);
        }
    }
}

bool ConcreteDtmc::hasLabel(std::string const& label) const {
    for (auto const& l : labels_) {
        if (l.contains(label)) {
            return true;
        }
    }
    return false;
}

StateSet ConcreteDtmc::statesWithLabel(std::string const& label) const {
    StateSet out(stateCount());
    for (StateId s = 0; s < stateCount(); ++s) {
        if (labels_[s].contains(label)) {
            out.insert(s);
        }
    }
    if (out.empty()) {
        throw UnknownLabel(label);
    }
    return out;
}

RewardStructure const& ConcreteDtmc::reward(std::string const& name) const {
    for (auto const& r : rewards_) {
        if (r.name == name) {
            return r;
        }
    }
    throw UnknownReward(name);
}

std::vector<double> ConcreteDtmc::alignedTransitionRewards(RewardStructure const& reward) const {
    std::vector<double> out(matrix_.entryCount(), 0.0);
    if (reward.transitionRewards.empty()) {
        return out;
    }
    for (StateId s = 0; s < stateCount(); ++s) {
        auto offset = matrix_.rowOffset(s);
        auto row = matrix_.row(s);
        for (std::size_t i = 0; i < row.size(); ++i) {
            out[offset + i] = reward.transitionReward(s, row[i].column);
        }
    }
    return out;
}

ConcreteDtmc ConcreteDtmc::withInitial(StateId s) const {
    ConcreteDtmc copy(*this);
    if (s >= stateCount()) {
        throw InvalidModel("initial state out of range");
    }
    copy.initial_ = s;
    return copy;
}

ConcreteDtmc instantiate(ParametricDtmc const& model, ParameterAssignment const& assignment) {
    auto const n = model.stateCount();
    std::vector<std::pair<std::pair<StateId, StateId>, double>> triplets;
    triplets.reserve(model.transitions.size());
    for (auto const& t : model.transitions) {
        double value;
        if (auto const* c = std::get_if<double>(&t.probability)) {
            value = *c;
        } else {
            auto const& name = std::get<ParameterRef>(t.probability).name;
            auto it = assignment.find(name);
            if (it == assignment.end()) {
                throw MissingParameter(name);
            }
            value = it->second;
        }
        triplets.push_back({{t.source, t.target}, value});
    }
    return ConcreteDtmc(model.stateNames, model.labels, model.initial,
                        SparseMatrix::fromTriplets(n, n, std::move(triplets)), model.rewards);
}

}  // namespace pmcdse
