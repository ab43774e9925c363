#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fraclap/analysis.hpp"
#include "fraclap/analytic.hpp"
#include "fraclap/fastop.hpp"
#include "fraclap/field_io.hpp"
#include "fraclap/krylov.hpp"
#include "fraclap/precond.hpp"
#include "fraclap/random.hpp"
#include "fraclap/timestepper.hpp"

using namespace fraclap;

namespace {

struct CommonOpts {
    double alpha = 1.5;
    int d = 1;
    int m = 511;
    std::vector<double> box;  // lo,hi (same on every axis); default from case
    std::string case_name = "smooth1d";
    int delta_points = 20;
    double tol = 1e-9;
    int max_iters = 0;  // 0 -> dimension default
    std::string precond = "on";
    bool lshape = false;
    std::uint64_t seed = 0;
    std::string out;
    std::string dump_field;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--alpha", o.alpha, "fractional order in (0,2)")->capture_default_str();
    cmd->add_option("--d", o.d, "dimension 1..3")->capture_default_str();
    cmd->add_option("--m", o.m, "interior points per axis")->capture_default_str();
    cmd->add_option("--box", o.box, "axis bounds lo,hi (applied to every axis)")->expected(2);
    cmd->add_option("--case", o.case_name, "smooth1d|rough1d|bump|ones|parabolic_ic")->capture_default_str();
    cmd->add_option("--delta-points", o.delta_points, "window radius in grid points")->capture_default_str();
    cmd->add_option("--tol", o.tol, "relative residual tolerance")->capture_default_str();
    cmd->add_option("--max-iters", o.max_iters, "iteration cap (0 = dimension default)");
    cmd->add_option("--precond", o.precond, "on|off")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
    cmd->add_flag("--lshape", o.lshape, "use the L-shaped occluded domain (d=2)");
    cmd->add_option("--seed", o.seed, "seed for random right-hand sides")->capture_default_str();
    cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
    cmd->add_option("--dump-field", o.dump_field, "write the resulting field (.csv or .bin by extension)");
}

int default_max_iters(int d) { return d == 3 ? 250 : 1000; }

GridPtr build_grid(const CommonOpts& o, int m) {
    if (o.lshape) {
        if (o.d != 2) throw CLI::ValidationError("--lshape requires --d 2");
        return Grid::make_l_shape(m);
    }
    Box box;
    if (!o.box.empty())
        box = Box::cube(o.d, o.box[0], o.box[1]);
    else
        box = reference_case(o.case_name).default_box(o.d);
    return Grid::make_full(o.d, m, box);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw CLI::ValidationError("cannot open output file " + path);
    return f;
}

std::ostream& out_stream(const CommonOpts& o, std::ofstream& file) {
    if (o.out.empty()) return std::cout;
    file = open_out(o.out);
    return file;
}

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void maybe_dump(const Field& f, const std::string& path) {
    if (path.empty()) return;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        write_field_csv(f, path);
    else
        write_field_binary(f, path);
}

struct Problem {
    GridPtr grid;
    std::unique_ptr<FracLapOperator> op;
};

Problem build_problem(const CommonOpts& o, int m) {
    Problem p;
    p.grid = build_grid(o, m);
    const auto consts = build_constants(o.alpha, p.grid->dim(), p.grid->spacing(), o.delta_points);
    p.op = std::make_unique<FracLapOperator>(p.grid, consts);
    return p;
}

double median_apply_seconds(const FracLapOperator& op, const Field& u) {
    std::array<double, 3> t{};
    for (auto& ti : t) {
        const auto t0 = std::chrono::steady_clock::now();
        const Field f = op.apply(u);
        ti = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    std::sort(t.begin(), t.end());
    return t[1];
}

int run_constants(const CommonOpts& o) {
    std::ofstream file;
    auto& out = out_stream(o, file);
    auto grid = build_grid(o, o.m);
    const auto c = build_constants(o.alpha, grid->dim(), grid->spacing(), o.delta_points);
    out << "alpha,d,h,delta,C,A1,A2,A3\n";
    out << c.alpha << "," << c.d << "," << sci(c.h) << "," << sci(c.delta) << "," << sci(c.C) << ","
        << sci(c.A1) << "," << sci(c.A2) << "," << sci(c.A3) << "\n";
    return 0;
}

int run_apply(const CommonOpts& o, bool richardson) {
    std::ofstream file;
    auto& out = out_stream(o, file);
    const auto rc = reference_case(o.case_name);

    if (richardson) {
        std::array<Field, 3> fs;
        std::array<int, 3> ms{o.m, 2 * o.m + 1, 4 * o.m + 3};
        for (int i = 0; i < 3; ++i) {
            auto p = build_problem(o, ms[static_cast<std::size_t>(i)]);
            fs[static_cast<std::size_t>(i)] = p.op->apply(rc.rhs_field(o.alpha, p.grid));
        }
        const auto r2 = richardson_rate(fs[0], fs[1], fs[2], Norm::l2);
        const auto ri = richardson_rate(fs[0], fs[1], fs[2], Norm::linf);
        out << "alpha,d,m_coarse,m_medium,m_fine,R2,Rinf\n";
        out << o.alpha << "," << o.d << "," << ms[0] << "," << ms[1] << "," << ms[2] << "," << sci(r2.rate)
            << "," << sci(ri.rate) << "\n";
        return 0;
    }

    if (!rc.has_solution)
        throw CLI::ValidationError("case " + o.case_name +
                                   " has no closed-form pair; use --richardson for grid-rate estimates");
    auto p = build_problem(o, o.m);
    const Field u_true = rc.solution_field(o.alpha, p.grid);
    const Field f = rc.rhs_field(o.alpha, p.grid);
    const Field mu = p.op->apply(u_true);
    const double e_app = relative_error(mu, f, Norm::l2);
    const double t_app = median_apply_seconds(*p.op, u_true);
    maybe_dump(mu, o.dump_field);
    out << "alpha,d,N,e_app,t_con,t_app\n";
    out << o.alpha << "," << o.d << "," << p.grid->n_active() << "," << sci(e_app) << ","
        << sci(p.op->build_seconds()) << "," << sci(t_app) << "\n";
    return 0;
}

struct SolveOutcome {
    Field u;
    SolveReport rep;
    double t_pc = 0.0;
};

SolveOutcome elliptic_solve(const FracLapOperator& op, const Field& b, double tol, int max_iters,
                            bool precond) {
    SolveOutcome so{Field::zeros(b.grid()), {}, 0.0};
    LinearOp a = [&op](const Field& v) { return op.apply(v); };
    std::unique_ptr<PoissonPreconditioner> pc;
    LinearOp prec;
    if (precond) {
        const auto& c = op.constants();
        const double gamma = c.C * std::pow(c.h, c.d) * std::abs(c.A2 + c.A3);
        pc = std::make_unique<PoissonPreconditioner>(op.grid(), 0.0, gamma);
        so.t_pc = pc->build_seconds();
        prec = [&pcr = *pc](const Field& r) { return pcr.apply(r); };
    }
    auto [u, rep] = pcg(a, precond ? &prec : nullptr, b, tol, max_iters);
    so.u = std::move(u);
    so.rep = std::move(rep);
    return so;
}

int run_solve(const CommonOpts& o, bool richardson, const std::string& residuals_path) {
    std::ofstream file;
    auto& out = out_stream(o, file);
    const auto rc = reference_case(o.case_name);
    const bool use_pc = o.precond == "on";
    const int cap = o.max_iters > 0 ? o.max_iters : default_max_iters(o.d);

    if (richardson) {
        std::array<Field, 3> us;
        std::array<int, 3> ms{o.m, 2 * o.m + 1, 4 * o.m + 3};
        for (int i = 0; i < 3; ++i) {
            auto p = build_problem(o, ms[static_cast<std::size_t>(i)]);
            const Field b = rc.rhs_field(o.alpha, p.grid);
            auto so = elliptic_solve(*p.op, b, o.tol, cap, use_pc);
            if (!so.rep.converged)
                throw std::runtime_error("solve did not converge on m=" + std::to_string(ms[static_cast<std::size_t>(i)]));
            us[static_cast<std::size_t>(i)] = std::move(so.u);
        }
        const auto r2 = richardson_rate(us[0], us[1], us[2], Norm::l2);
        const auto ri = richardson_rate(us[0], us[1], us[2], Norm::linf);
        out << "alpha,d,m_coarse,m_medium,m_fine,R2,Rinf\n";
        out << o.alpha << "," << o.d << "," << ms[0] << "," << ms[1] << "," << ms[2] << "," << sci(r2.rate)
            << "," << sci(ri.rate) << "\n";
        return 0;
    }

    auto p = build_problem(o, o.m);
    const Field b = rc.rhs_field(o.alpha, p.grid);
    auto so = elliptic_solve(*p.op, b, o.tol, cap, use_pc);
    maybe_dump(so.u, o.dump_field);
    if (!residuals_path.empty()) {
        auto rf = open_out(residuals_path);
        rf << "iter,relres\n";
        for (std::size_t k = 0; k < so.rep.residual_history.size(); ++k)
            rf << k << "," << sci(so.rep.residual_history[k]) << "\n";
    }
    std::string e_sol;
    if (rc.has_solution && so.rep.converged)
        e_sol = sci(relative_error(so.u, rc.solution_field(o.alpha, p.grid), Norm::l2));
    out << "alpha,d,N,precond,tol,converged,iters,t_cg,e_sol\n";
    out << o.alpha << "," << o.d << "," << p.grid->n_active() << "," << (use_pc ? 1 : 0) << "," << sci(o.tol)
        << "," << (so.rep.converged ? 1 : 0) << "," << so.rep.iterations << "," << sci(so.rep.wall_seconds)
        << "," << e_sol << "\n";
    return 0;
}

int run_evolve(const CommonOpts& o, double dt_opt, double t_final, int steps, bool random_rhs,
               int record_stride) {
    std::ofstream file;
    auto& out = out_stream(o, file);
    auto p = build_problem(o, o.m);
    const double dt = dt_opt > 0.0 ? dt_opt : 1.0 / static_cast<double>(o.m + 1);
    const bool use_pc = o.precond == "on";
    const int cap = o.max_iters > 0 ? o.max_iters : default_max_iters(o.d);

    std::unique_ptr<PoissonPreconditioner> pc;
    if (use_pc) pc = make_cn_preconditioner(*p.op, dt);

    out << "step,t,iters,relres\n";
    if (steps == 1 && random_rhs) {
        // one implicit step against a seeded random right-hand side,
        // equivalent to a single linear solve with the CN system matrix
        const Field b = random_field(p.grid, o.seed);
        const double a = 0.5 * dt;
        LinearOp sys = [&opr = *p.op, a](const Field& v) {
            Field mv = opr.apply(v);
            mv *= a;
            return v + mv;
        };
        LinearOp prec;
        if (pc) prec = [&pcr = *pc](const Field& r) { return pcr.apply(r); };
        auto [u, rep] = pcg(sys, pc ? &prec : nullptr, b, o.tol, cap);
        maybe_dump(u, o.dump_field);
        out << 1 << "," << sci(dt) << "," << rep.iterations << "," << sci(rep.relative_residual) << "\n";
        return rep.converged ? 0 : 3;
    }

    const auto rc = reference_case(o.case_name);
    Field u0 = (o.case_name == "parabolic_ic") ? rc.initial_field(p.grid) : rc.rhs_field(o.alpha, p.grid);
    EvolutionConfig cfg;
    cfg.dt = dt;
    cfg.t_final = steps > 0 ? dt * steps : t_final;
    cfg.tol = o.tol;
    cfg.max_iterations = cap;
    cfg.record_stride = record_stride;
    if (random_rhs) {
        const Field fr = random_field(p.grid, o.seed);
        cfg.source = [fr](double) { return fr; };
    }
    auto [u, summary] = evolve(*p.op, pc.get(), u0, cfg);
    maybe_dump(u, o.dump_field);
    for (const auto& st : summary.steps)
        out << st.step << "," << sci(st.t) << "," << st.iterations << "," << sci(st.relres) << "\n";
    return summary.completed ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete fractional Laplacian toolkit: fast apply, preconditioned solves, diffusion runs"};
    app.set_config("--config", "", "key=value configuration file (flags override)");
    app.require_subcommand(1);

    CommonOpts o;
    bool richardson = false;
    std::string residuals_path;
    double dt = 0.0, t_final = 0.25;
    int steps = 0, record_stride = 0;

    auto* c_const = app.add_subcommand("constants", "print the operator constants row");
    add_common(c_const, o);

    auto* c_apply = app.add_subcommand("apply", "forward-apply experiments (error and timing)");
    add_common(c_apply, o);
    c_apply->add_flag("--richardson", richardson, "estimate grid rates on m, 2m+1, 4m+3");

    auto* c_solve = app.add_subcommand("solve", "steady-state solves with CG");
    add_common(c_solve, o);
    c_solve->add_flag("--richardson", richardson, "estimate solution grid rates on m, 2m+1, 4m+3");
    c_solve->add_option("--residuals", residuals_path, "dump per-iteration residual history CSV");

    auto* c_evolve = app.add_subcommand("evolve", "time-dependent diffusion runs");
    add_common(c_evolve, o);
    c_evolve->add_option("--dt", dt, "time step (default 1/(m+1))");
    c_evolve->add_option("--T", t_final, "final time")->capture_default_str();
    c_evolve->add_option("--steps", steps, "run exactly this many steps (overrides --T)");
    c_evolve->add_flag("--random-rhs", "use a seeded uniform(-1,1) source");
    c_evolve->add_option("--record-stride", record_stride, "snapshot stride (0 = none)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_const)) return run_constants(o);
        if (app.got_subcommand(c_apply)) return run_apply(o, richardson);
        if (app.got_subcommand(c_solve)) return run_solve(o, richardson, residuals_path);
        if (app.got_subcommand(c_evolve))
            return run_evolve(o, dt, t_final, steps, c_evolve->count("--random-rhs") > 0, record_stride);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
