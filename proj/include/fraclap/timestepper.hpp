#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fraclap/fastop.hpp"
#include "fraclap/krylov.hpp"
#include "fraclap/precond.hpp"

namespace fraclap {

struct EvolutionConfig {
    double dt = 0.0;
    double t_final = 0.0;
    double tol = 1e-9;
    int max_iterations = 1000;
    /// Source f(., t); empty means f == 0.
    std::function<Field(double)> source;
    /// Keep a snapshot every `record_stride` steps (0 disables snapshots).
    int record_stride = 0;
};

struct StepRecord {
    int step = 0;
    double t = 0.0;  // time reached after the step
    int iterations = 0;
    double relres = 0.0;
};

struct EvolutionSummary {
    std::vector<StepRecord> steps;
    std::vector<std::pair<double, Field>> snapshots;
    bool completed = false;
};

/**
 * One trapezoidal (Crank-Nicolson) step of u_t = -M u + f:
 * solves (I + dt/2 M) u_next = (I - dt/2 M) u + dt/2 (f_next + f_now) by PCG
 * seeded with the current state. The preconditioner must represent
 * sigma = 1, gamma = (dt/2) C h^d |A2+A3|.
 */
std::pair<Field, SolveReport> cn_step(const FracLapOperator& op, const PoissonPreconditioner* pc,
                                      const Field& u_now, const Field& f_now, const Field& f_next,
                                      double dt, double tol, int max_iterations = 1000);

/// The matching shifted-Laplacian preconditioner for cn_step.
std::unique_ptr<PoissonPreconditioner> make_cn_preconditioner(
    const FracLapOperator& op, double dt,
    PoissonPreconditioner::BackendChoice choice = PoissonPreconditioner::BackendChoice::automatic);

/// March from t = 0 to t_final; t_final/dt must be integral. A failed step
/// aborts and returns the partial trajectory with completed = false.
std::pair<Field, EvolutionSummary> evolve(const FracLapOperator& op, const PoissonPreconditioner* pc,
                                          const Field& u0, const EvolutionConfig& config);

}  // namespace fraclap
