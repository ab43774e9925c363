#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "fraclap/grid.hpp"

namespace fraclap {

using LinearOp = std::function<Field(const Field&)>;

struct SolveReport {
    int iterations = 0;
    bool converged = false;
    double relative_residual = 0.0;
    std::vector<double> residual_history;  // entry k: |b - A x_k| / |b|
    double wall_seconds = 0.0;
};

/**
 * Preconditioned conjugate gradients for symmetric positive definite A.
 * Stops when the recurrence residual satisfies |b - A x_k| / |b| <= tol.
 * Pass nullptr for `precond` to run plain CG; `x0` defaults to zero.
 * Throws on detected indefiniteness (nonpositive p'Ap), naming the iteration.
 */
std::pair<Field, SolveReport> pcg(const LinearOp& apply_a, const LinearOp* precond, const Field& b,
                                  double tol, int max_iterations, const Field* x0 = nullptr);

}  // namespace fraclap
