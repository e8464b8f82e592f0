#pragma once

#include <vector>

#include "pmcdse/dtmc.h"
#include "pmcdse/sparse_matrix.h"

namespace pmcdse {

// Tarjan's algorithm (iterative). Components come out in reverse topological
// order of the condensation; members of each component are sorted.
std::vector<std::vector<StateId>> stronglyConnectedComponents(SparseMatrix const& matrix);

// Bottom SCCs: components without an edge leaving them. Sorted by their
// smallest member.
std::vector<StateSet> bottomSccs(SparseMatrix const& matrix);
std::vector<StateSet> bsccDecomposition(ConcreteDtmc const& chain);

// States reachable from `start` (including `start`).
StateSet forwardReachable(SparseMatrix const& matrix, StateSet const& start);

// `seeds` plus every state in `through` that has a path into `seeds` visiting
// only `through` states on the way. `backward` is the transposed matrix.
StateSet backwardReachable(SparseMatrix const& backward, StateSet const& seeds, StateSet const& through);

// Qualitative analysis of `constraint U target`, purely graph-based.
struct QualitativeSplit {
    StateSet prob0;  // satisfy the until with probability 0
    StateSet prob1;  // satisfy it with probability 1
};
QualitativeSplit qualitativeUntil(SparseMatrix const& matrix, StateSet const& constraint, StateSet const& target);

}  // namespace pmcdse
