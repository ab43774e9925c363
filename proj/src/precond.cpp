#include "fraclap/precond.hpp"

#include <Eigen/Sparse>

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fftw_support.hpp"

namespace fraclap {

struct PoissonPreconditioner::FactorImpl {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

PoissonPreconditioner::PoissonPreconditioner(GridPtr grid, double sigma, double gamma, BackendChoice choice)
    : grid_(std::move(grid)), sigma_(sigma), gamma_(gamma) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(gamma_ > 0.0)) throw std::invalid_argument("preconditioner: gamma must be positive");
    if (sigma_ < 0.0) throw std::invalid_argument("preconditioner: sigma must be nonnegative");
    const Grid& g = *grid_;
    if (choice == BackendChoice::spectral && !g.is_full())
        throw std::invalid_argument("preconditioner: spectral backend requires a full grid");
    backend_ = (choice == BackendChoice::factorized || !g.is_full()) ? Backend::factorized : Backend::spectral;

    const int d = g.dim();
    const int m = g.points_per_axis();
    const double h = g.spacing();

    if (backend_ == Backend::spectral) {
        axis_eigs_.resize(static_cast<std::size_t>(m));
        for (int k = 1; k <= m; ++k)
            axis_eigs_[static_cast<std::size_t>(k - 1)] =
                (2.0 - 2.0 * std::cos(std::numbers::pi * k / (m + 1))) / (h * h);
        std::array<int, 3> n{m, m, m};
        std::array<fftw_r2r_kind, 3> kinds{FFTW_RODFT00, FFTW_RODFT00, FFTW_RODFT00};
        std::vector<double> scratch_in(static_cast<std::size_t>(g.n_full()));
        std::vector<double> scratch_out(static_cast<std::size_t>(g.n_full()));
        std::lock_guard<std::mutex> lk(detail::fftw_planner_mutex());
        dst_plan_ = fftw_plan_r2r(d, n.data(), scratch_in.data(), scratch_out.data(), kinds.data(),
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    } else {
        // sigma I + gamma L over active points; inactive neighbors drop out
        // (Dirichlet) while the diagonal keeps the full 2d/h^2 term.
        const double diag = sigma_ + gamma_ * 2.0 * d / (h * h);
        const double off = -gamma_ / (h * h);
        const auto& flats = g.active_flat();
        const std::int64_t n = g.n_active();
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<std::size_t>(n) * (1 + 2 * static_cast<std::size_t>(d)));
        for (std::int64_t row = 0; row < n; ++row) {
            trips.emplace_back(static_cast<int>(row), static_cast<int>(row), diag);
            const auto ii = g.unflatten(flats[static_cast<std::size_t>(row)]);
            for (int a = 0; a < d; ++a) {
                for (int sgn : {-1, 1}) {
                    auto nb = ii;
                    nb[static_cast<std::size_t>(a)] += sgn;
                    if (nb[static_cast<std::size_t>(a)] < 0 || nb[static_cast<std::size_t>(a)] >= m) continue;
                    const std::int64_t col =
                        g.active_ordinal(g.flat_index(std::span<const int>(nb.data(), static_cast<std::size_t>(d))));
                    if (col >= 0) trips.emplace_back(static_cast<int>(row), static_cast<int>(col), off);
                }
            }
        }
        Eigen::SparseMatrix<double> A(static_cast<int>(n), static_cast<int>(n));
        A.setFromTriplets(trips.begin(), trips.end());
        factor_ = std::make_unique<FactorImpl>();
        factor_->ldlt.compute(A);
        if (factor_->ldlt.info() != Eigen::Success)
            throw std::runtime_error("preconditioner: sparse factorization failed");
    }
    build_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PoissonPreconditioner::~PoissonPreconditioner() {
    if (dst_plan_) {
        std::lock_guard<std::mutex> lk(detail::fftw_planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(dst_plan_));
    }
}

Field PoissonPreconditioner::apply(const Field& r) const {
    if (!r.grid() || !r.grid()->same_layout(*grid_)) throw std::invalid_argument("preconditioner: field grid mismatch");
    const Grid& g = *grid_;
    if (backend_ == Backend::factorized) {
        Eigen::Map<const Eigen::VectorXd> rv(r.values().data(), static_cast<Eigen::Index>(r.size()));
        Eigen::VectorXd z = factor_->ldlt.solve(rv);
        std::vector<double> out(z.data(), z.data() + z.size());
        return Field::from_values(grid_, std::move(out));
    }

    const int d = g.dim();
    const int m = g.points_per_axis();
    std::vector<double> buf(r.values().begin(), r.values().end());
    std::vector<double> tmp(buf.size());
    fftw_execute_r2r(static_cast<fftw_plan>(dst_plan_), buf.data(), tmp.data());

    const int lim2 = (d >= 2) ? m : 1;
    const int lim3 = (d >= 3) ? m : 1;
    std::size_t idx = 0;
    for (int k1 = 0; k1 < m; ++k1) {
        const double e1 = axis_eigs_[static_cast<std::size_t>(k1)];
        for (int k2 = 0; k2 < lim2; ++k2) {
            const double e2 = (d >= 2) ? axis_eigs_[static_cast<std::size_t>(k2)] : 0.0;
            for (int k3 = 0; k3 < lim3; ++k3, ++idx) {
                const double e3 = (d >= 3) ? axis_eigs_[static_cast<std::size_t>(k3)] : 0.0;
                tmp[idx] /= sigma_ + gamma_ * (e1 + e2 + e3);
            }
        }
    }
    fftw_execute_r2r(static_cast<fftw_plan>(dst_plan_), tmp.data(), buf.data());
    // RODFT00 is self-inverse up to 2(m+1) per axis.
    const double norm = 1.0 / std::pow(2.0 * (m + 1), d);
    for (double& v : buf) v *= norm;
    return Field::from_values(grid_, std::move(buf));
}

}  // namespace fraclap
