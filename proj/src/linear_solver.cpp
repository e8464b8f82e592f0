#include "pmcdse/linear_solver.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pmcdse/errors.h"

namespace pmcdse {

namespace {

constexpr double kPivotTolerance = 1e-14;

void checkFinite(std::span<double const> x) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw SolverFailure("solution contains non-finite values");
        }
    }
}

}  // namespace

std::vector<double> solveDense(std::vector<double> a, std::vector<double> b, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i * n + k]) > std::abs(a[pivot * n + k])) {
                pivot = i;
            }
        }
        if (std::abs(a[pivot * n + k]) < kPivotTolerance) {
            throw SolverFailure(fmt::format("singular system (pivot {} vanishes)", k));
        }
        if (pivot != k) {
            std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(k * n), a.begin() + static_cast<std::ptrdiff_t>(k * n + n),
                             a.begin() + static_cast<std::ptrdiff_t>(pivot * n));
            std::swap(b[k], b[pivot]);
        }
        double const diag = a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            double const factor = a[i * n + k] / diag;
            if (factor == 0.0) {
                continue;
            }
            a[i * n + k] = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i * n + j] -= factor * a[k * n + j];
            }
            b[i] -= factor * b[k];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) {
            sum -= a[ii * n + j] * x[j];
        }
        x[ii] = sum / a[ii * n + ii];
    }
    checkFinite(x);
    return x;
}

std::vector<double> solveIdentityMinus(SparseMatrix const& a, std::span<double const> b, SolverOptions const& options) {
    auto const n = a.rowCount();
    if (n == 0) {
        return {};
    }
    if (n <= options.denseLimit) {
        std::vector<double> dense(n * n, 0.0);
        for (StateId i = 0; i < n; ++i) {
            dense[i * n + i] = 1.0;
            for (auto const& e : a.row(i)) {
                dense[i * n + e.column] -= e.value;
            }
        }
        return solveDense(std::move(dense), std::vector<double>(b.begin(), b.end()), n);
    }

    // Jacobi on x = A x + b, with the diagonal of A folded into the divisor.
    std::vector<double> x(n, 0.0);
    std::vector<double> next(n, 0.0);
    for (std::size_t iter = 0; iter < options.maxIterations; ++iter) {
        double residual = 0.0;
        for (StateId i = 0; i < n; ++i) {
            double diag = 0.0;
            double sum = b[i];
            for (auto const& e : a.row(i)) {
                if (e.column == i) {
                    diag = e.value;
                } else {
                    sum += e.value * x[e.column];
                }
            }
            if (1.0 - diag <= 0.0) {
                throw SolverFailure(fmt::format("row {} has no exit from the maybe-set", i));
            }
            next[i] = sum / (1.0 - diag);
            residual = std::max(residual, std::abs(next[i] - x[i]));
        }
        x.swap(next);
        if (residual < options.residualTolerance) {
            checkFinite(x);
            return x;
        }
    }
    throw SolverFailure(fmt::format("Jacobi iteration did not converge within {} iterations", options.maxIterations));
}

std::vector<double> solveStationary(SparseMatrix const& p, SolverOptions const& options) {
    auto const n = p.rowCount();
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {1.0};
    }
    if (n <= options.denseLimit) {
        // pi (P - I) = 0, i.e. (P^T - I) pi^T = 0, with the last balance
        // equation replaced by sum(pi) = 1.
        std::vector<double> dense(n * n, 0.0);
        for (StateId i = 0; i < n; ++i) {
            dense[i * n + i] = -1.0;
        }
        for (StateId i = 0; i < n; ++i) {
            for (auto const& e : p.row(i)) {
                dense[e.column * n + i] += e.value;
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            dense[(n - 1) * n + j] = 1.0;
        }
        std::vector<double> rhs(n, 0.0);
        rhs[n - 1] = 1.0;
        auto pi = solveDense(std::move(dense), std::move(rhs), n);
        for (auto& v : pi) {
            v = std::max(v, 0.0);
        }
        double total = 0.0;
        for (double v : pi) {
            total += v;
        }
        for (auto& v : pi) {
            v /= total;
        }
        return pi;
    }

    // Damped power iteration: the lazy chain (I + P) / 2 is aperiodic.
    std::vector<double> pi(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    for (std::size_t iter = 0; iter < options.maxIterations; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (StateId i = 0; i < n; ++i) {
            next[i] += 0.5 * pi[i];
            for (auto const& e : p.row(i)) {
                next[e.column] += 0.5 * pi[i] * e.value;
            }
        }
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(next[i] - pi[i]));
        }
        pi.swap(next);
        if (residual < options.residualTolerance * 0.5) {
            double total = 0.0;
            for (double v : pi) {
                total += v;
            }
            for (auto& v : pi) {
                v /= total;
            }
            return pi;
        }
    }
    throw SolverFailure(fmt::format("power iteration did not converge within {} iterations", options.maxIterations));
}

}  // namespace pmcdse
