#include "fraclap/krylov.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fraclap {

std::pair<Field, SolveReport> pcg(const LinearOp& apply_a, const LinearOp* precond, const Field& b,
                                  double tol, int max_iterations, const Field* x0) {
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("pcg: tol must lie in (0,1)");
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;

    const double nb = b.norm2();
    Field x = x0 ? *x0 : Field::zeros(b.grid());
    if (nb == 0.0) {
        x = Field::zeros(b.grid());
        rep.converged = true;
        rep.relative_residual = 0.0;
        rep.residual_history.push_back(0.0);
        rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return {std::move(x), rep};
    }

    Field r = b - apply_a(x);
    double relres = r.norm2() / nb;
    rep.residual_history.push_back(relres);
    if (relres <= tol) {
        rep.converged = true;
        rep.relative_residual = relres;
        rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return {std::move(x), rep};
    }

    Field z = precond ? (*precond)(r) : r;
    Field p = z;
    double rz = r.dot(z);

    for (int k = 0; k < max_iterations; ++k) {
        const Field ap = apply_a(p);
        const double pap = p.dot(ap);
        if (!(pap > 0.0))
            throw std::runtime_error("pcg: operator not positive definite (p'Ap <= 0 at iteration " +
                                     std::to_string(k + 1) + ")");
        const double alpha = rz / pap;
        {
            auto xv = x.values();
            auto rv = r.values();
            const auto pv = p.values();
            const auto av = ap.values();
            for (std::size_t i = 0; i < xv.size(); ++i) {
                xv[i] += alpha * pv[i];
                rv[i] -= alpha * av[i];
            }
        }
        rep.iterations = k + 1;
        relres = r.norm2() / nb;
        rep.residual_history.push_back(relres);
        if (relres <= tol) {
            rep.converged = true;
            break;
        }
        z = precond ? (*precond)(r) : r;
        const double rz_next = r.dot(z);
        const double beta = rz_next / rz;
        rz = rz_next;
        auto pv = p.values();
        const auto zv = z.values();
        for (std::size_t i = 0; i < pv.size(); ++i) pv[i] = zv[i] + beta * pv[i];
    }

    rep.relative_residual = relres;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(x), rep};
}

}  // namespace fraclap
