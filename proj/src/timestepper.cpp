#include "fraclap/timestepper.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclap {

std::pair<Field, SolveReport> cn_step(const FracLapOperator& op, const PoissonPreconditioner* pc,
                                      const Field& u_now, const Field& f_now, const Field& f_next,
                                      double dt, double tol, int max_iterations) {
    if (!(dt > 0.0)) throw std::invalid_argument("cn_step: dt must be positive");
    const double a = 0.5 * dt;

    Field rhs = u_now - a * op.apply(u_now);
    Field forcing = f_now + f_next;
    forcing *= a;
    rhs += forcing;

    LinearOp system = [&op, a](const Field& v) {
        Field mv = op.apply(v);
        mv *= a;
        return v + mv;
    };
    LinearOp prec;
    if (pc) prec = [pc](const Field& r) { return pc->apply(r); };

    return pcg(system, pc ? &prec : nullptr, rhs, tol, max_iterations, &u_now);
}

std::unique_ptr<PoissonPreconditioner> make_cn_preconditioner(const FracLapOperator& op, double dt,
                                                              PoissonPreconditioner::BackendChoice choice) {
    const auto& c = op.constants();
    const double gamma = 0.5 * dt * c.C * std::pow(c.h, c.d) * std::abs(c.A2 + c.A3);
    return std::make_unique<PoissonPreconditioner>(op.grid(), 1.0, gamma, choice);
}

std::pair<Field, EvolutionSummary> evolve(const FracLapOperator& op, const PoissonPreconditioner* pc,
                                          const Field& u0, const EvolutionConfig& config) {
    if (!(config.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    const double ratio = config.t_final / config.dt;
    const long nsteps = std::lround(ratio);
    if (nsteps < 1 || std::abs(ratio - static_cast<double>(nsteps)) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("evolve: t_final must be an integral number of steps");

    EvolutionSummary summary;
    Field u = u0;
    Field f_now = config.source ? config.source(0.0) : Field::zeros(u0.grid());
    for (long k = 0; k < nsteps; ++k) {
        const double t_next = config.dt * static_cast<double>(k + 1);
        Field f_next = config.source ? config.source(t_next) : Field::zeros(u0.grid());
        auto [u_next, rep] = cn_step(op, pc, u, f_now, f_next, config.dt, config.tol, config.max_iterations);
        summary.steps.push_back({static_cast<int>(k + 1), t_next, rep.iterations, rep.relative_residual});
        if (!rep.converged) return {std::move(u), std::move(summary)};
        u = std::move(u_next);
        f_now = std::move(f_next);
        if (config.record_stride > 0 && (k + 1) % config.record_stride == 0)
            summary.snapshots.emplace_back(t_next, u);
    }
    summary.completed = true;
    return {std::move(u), std::move(summary)};
}

}  // namespace fraclap
