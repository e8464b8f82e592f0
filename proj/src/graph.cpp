#include "pmcdse/graph.h"

#include <algorithm>
#include <deque>
#include <limits>

namespace pmcdse {

std::vector<std::vector<StateId>> stronglyConnectedComponents(SparseMatrix const& matrix) {
    constexpr auto kUnvisited = std::numeric_limits<std::size_t>::max();
    auto const n = matrix.rowCount();
    std::vector<std::size_t> index(n, kUnvisited);
    std::vector<std::size_t> lowlink(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<StateId> stack;
    std::vector<std::vector<StateId>> components;
    std::size_t counter = 0;

    struct Frame {
        StateId state;
        std::size_t next;
    };
    std::vector<Frame> callStack;

    for (StateId root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) {
            continue;
        }
        callStack.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        onStack[root] = true;

        while (!callStack.empty()) {
            auto& frame = callStack.back();
            auto row = matrix.row(frame.state);
            if (frame.next < row.size()) {
                auto w = row[frame.next++].column;
                if (index[w] == kUnvisited) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    onStack[w] = true;
                    callStack.push_back({w, 0});
                } else if (onStack[w]) {
                    lowlink[frame.state] = std::min(lowlink[frame.state], index[w]);
                }
                continue;
            }
            auto v = frame.state;
            callStack.pop_back();
            if (!callStack.empty()) {
                auto parent = callStack.back().state;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
            if (lowlink[v] == index[v]) {
                std::vector<StateId> component;
                StateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    onStack[w] = false;
                    component.push_back(w);
                } while (w != v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
        }
    }
    return components;
}

std::vector<StateSet> bottomSccs(SparseMatrix const& matrix) {
    auto const n = matrix.rowCount();
    std::vector<StateSet> out;
    for (auto const& component : stronglyConnectedComponents(matrix)) {
        StateSet members(n);
        for (auto s : component) {
            members.insert(s);
        }
        bool bottom = true;
        for (auto s : component) {
            for (auto const& e : matrix.row(s)) {
                if (!members.contains(e.column)) {
                    bottom = false;
                    break;
                }
            }
            if (!bottom) {
                break;
            }
        }
        if (bottom) {
            out.push_back(std::move(members));
        }
    }
    std::sort(out.begin(), out.end(),
              [](StateSet const& a, StateSet const& b) { return a.members().front() < b.members().front(); });
    return out;
}

std::vector<StateSet> bsccDecomposition(ConcreteDtmc const& chain) { return bottomSccs(chain.matrix()); }

StateSet forwardReachable(SparseMatrix const& matrix, StateSet const& start) {
    StateSet reached = start;
    std::deque<StateId> queue;
    for (auto s : start.members()) {
        queue.push_back(s);
    }
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto const& e : matrix.row(s)) {
            if (!reached.contains(e.column)) {
                reached.insert(e.column);
                queue.push_back(e.column);
            }
        }
    }
    return reached;
}

StateSet backwardReachable(SparseMatrix const& backward, StateSet const& seeds, StateSet const& through) {
    StateSet reached = seeds;
    std::deque<StateId> queue;
    for (auto s : seeds.members()) {
        queue.push_back(s);
    }
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto const& e : backward.row(s)) {
            auto p = e.column;
            if (!reached.contains(p) && through.contains(p)) {
                reached.insert(p);
                queue.push_back(p);
            }
        }
    }
    return reached;
}

QualitativeSplit qualitativeUntil(SparseMatrix const& matrix, StateSet const& constraint, StateSet const& target) {
    auto const backward = matrix.transpose();
    auto const maybe = constraint.minus(target);
    auto const canReach = backwardReachable(backward, target, maybe);
    StateSet prob0 = ~canReach;
    StateSet prob1 = ~backwardReachable(backward, prob0, maybe);
    return {std::move(prob0), std::move(prob1)};
}

}  // namespace pmcdse
