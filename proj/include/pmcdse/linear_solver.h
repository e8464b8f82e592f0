#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmcdse/sparse_matrix.h"

namespace pmcdse {

struct SolverOptions {
    // Systems up to this many unknowns are solved directly.
    std::size_t denseLimit = 5000;
    // Iterative fallback: stop when the max-norm residual drops below this.
    double residualTolerance = 1e-10;
    std::size_t maxIterations = 1'000'000;
};

// Dense Gaussian elimination with partial pivoting. `a` is row-major n x n.
// Throws SolverFailure on a (numerically) singular system.
std::vector<double> solveDense(std::vector<double> a, std::vector<double> b, std::size_t n);

// Solves (I - A) x = b where A is substochastic and I - A is nonsingular,
// as arises for reachability and expected-reward systems.
std::vector<double> solveIdentityMinus(SparseMatrix const& a, std::span<double const> b, SolverOptions const& options);

// Stationary distribution of an irreducible stochastic matrix.
std::vector<double> solveStationary(SparseMatrix const& p, SolverOptions const& options);

}  // namespace pmcdse
