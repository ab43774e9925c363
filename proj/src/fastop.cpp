#include "fraclap/fastop.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fftw_support.hpp"

namespace fraclap {

int next_fast_size(int n) {
    if (n < 1) return 1;
    for (int c = n;; ++c) {
        int r = c;
        for (int p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return c;
    }
}

FracLapOperator::FracLapOperator(GridPtr grid, const OperatorConstants& consts)
    : grid_(std::move(grid)), consts_(consts) {
    const auto t0 = std::chrono::steady_clock::now();
    if (grid_->dim() != consts.d) throw std::invalid_argument("operator: dimension mismatch");
    if (std::abs(grid_->spacing() - consts.h) > 1e-12 * consts.h)
        throw std::invalid_argument("operator: constants spacing does not match grid");
    table_ = build_stencil(*grid_, consts_);

    const int d = grid_->dim();
    const int m = grid_->points_per_axis();
    const int P = next_fast_size(2 * m - 1);
    embed_total_ = 1;
    for (int a = 0; a < d; ++a) {
        embed_[static_cast<std::size_t>(a)] = P;
        embed_total_ *= P;
    }
    spec_total_ = embed_total_ / P * (P / 2 + 1);

    // Embed the stencil with circulant wraparound: index (P + o) mod P holds
    // the entry for offset o, so linear and circular convolution agree for
    // outputs in the first m^d block.
    std::vector<double> ker(static_cast<std::size_t>(embed_total_), 0.0);
    const int lim2 = (d >= 2) ? m : 1;
    const int lim3 = (d >= 3) ? m : 1;
    auto wrap = [P](int o) { return (o + P) % P; };
    for (int o1 = -(m - 1); o1 <= m - 1; ++o1) {
        const std::int64_t b1 = static_cast<std::int64_t>(wrap(d >= 1 ? o1 : 0));
        for (int o2 = -(lim2 - 1); o2 <= lim2 - 1; ++o2) {
            const std::int64_t b2 = (d >= 2) ? wrap(o2) : 0;
            for (int o3 = -(lim3 - 1); o3 <= lim3 - 1; ++o3) {
                const std::int64_t b3 = (d >= 3) ? wrap(o3) : 0;
                std::int64_t f = b1;
                if (d >= 2) f = f * P + b2;
                if (d >= 3) f = f * P + b3;
                const std::array<int, 3> off{o1, o2, o3};
                ker[static_cast<std::size_t>(f)] =
                    table_.at(std::span<const int>(off.data(), static_cast<std::size_t>(d)));
            }
        }
    }

    multiplier_.assign(static_cast<std::size_t>(spec_total_), {0.0, 0.0});
    {
        std::lock_guard<std::mutex> lk(detail::fftw_planner_mutex());
        plan_fwd_ = fftw_plan_dft_r2c(d, embed_.data(), ker.data(),
                                      reinterpret_cast<fftw_complex*>(multiplier_.data()),
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
        std::vector<std::complex<double>> cscratch(static_cast<std::size_t>(spec_total_));
        std::vector<double> rscratch(static_cast<std::size_t>(embed_total_));
        plan_bwd_ = fftw_plan_dft_c2r(d, embed_.data(), reinterpret_cast<fftw_complex*>(cscratch.data()),
                                      rscratch.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), ker.data(),
                         reinterpret_cast<fftw_complex*>(multiplier_.data()));
    build_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FracLapOperator::~FracLapOperator() {
    std::lock_guard<std::mutex> lk(detail::fftw_planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

Field FracLapOperator::apply(const Field& u) const {
    if (!u.grid() || !u.grid()->same_layout(*grid_)) throw std::invalid_argument("apply: field grid mismatch");
    const Grid& g = *grid_;
    const int d = g.dim();
    const int P = embed_[0];

    std::vector<double> buf(static_cast<std::size_t>(embed_total_), 0.0);
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(spec_total_));

    // Scatter active values into the zero-padded embedding lattice.
    const auto& flats = g.active_flat();
    for (std::size_t k = 0; k < flats.size(); ++k) {
        const auto idx = g.unflatten(flats[k]);
        std::int64_t f = idx[0];
        if (d >= 2) f = f * P + idx[1];
        if (d >= 3) f = f * P + idx[2];
        buf[static_cast<std::size_t>(f)] = u[static_cast<std::int64_t>(k)];
    }

    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), buf.data(),
                         reinterpret_cast<fftw_complex*>(spec.data()));
    const double inv = 1.0 / static_cast<double>(embed_total_);
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= multiplier_[i] * inv;
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_), reinterpret_cast<fftw_complex*>(spec.data()),
                         buf.data());

    Field out = Field::zeros(grid_);
    for (std::size_t k = 0; k < flats.size(); ++k) {
        const auto idx = g.unflatten(flats[k]);
        std::int64_t f = idx[0];
        if (d >= 2) f = f * P + idx[1];
        if (d >= 3) f = f * P + idx[2];
        out[static_cast<std::int64_t>(k)] = buf[static_cast<std::size_t>(f)];
    }
    return out;
}

Field FracLapOperator::apply_dense(const Field& u, std::int64_t cap) const {
    if (!u.grid() || !u.grid()->same_layout(*grid_)) throw std::invalid_argument("apply_dense: field grid mismatch");
    const Grid& g = *grid_;
    if (g.n_active() > cap) throw std::length_error("apply_dense: active point count exceeds cap");
    const int d = g.dim();
    const double h = consts_.h;
    const double s = static_cast<double>(d) + consts_.alpha;
    const double scale = consts_.C * std::pow(h, d);
    const double fd = (consts_.A2 + consts_.A3) / (h * h);
    const auto& flats = g.active_flat();
    const std::int64_t n = g.n_active();

    std::vector<std::array<int, 3>> idx(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) idx[static_cast<std::size_t>(k)] = g.unflatten(flats[static_cast<std::size_t>(k)]);

    Field out = Field::zeros(grid_);
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& ii = idx[static_cast<std::size_t>(i)];
        double kern = consts_.A1 * u[i];
        for (std::int64_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const auto& jj = idx[static_cast<std::size_t>(j)];
            std::int64_t q = 0;
            for (int a = 0; a < d; ++a) {
                const std::int64_t o = ii[static_cast<std::size_t>(a)] - jj[static_cast<std::size_t>(a)];
                q += o * o;
            }
            kern -= u[j] * std::pow(h * std::sqrt(static_cast<double>(q)), -s);
        }
        // (2d+1)-point second difference with zero Dirichlet neighbors.
        double lap = -2.0 * d * u[i];
        for (int a = 0; a < d; ++a) {
            for (int sgn : {-1, 1}) {
                auto nb = ii;
                nb[static_cast<std::size_t>(a)] += sgn;
                if (nb[static_cast<std::size_t>(a)] < 0 || nb[static_cast<std::size_t>(a)] >= g.points_per_axis()) continue;
                const std::int64_t nf = g.flat_index(std::span<const int>(nb.data(), static_cast<std::size_t>(d)));
                const std::int64_t ord = g.active_ordinal(nf);
                if (ord >= 0) lap += u[ord];
            }
        }
        out[i] = scale * (kern + fd * lap);
    }
    return out;
}

Field apply_fd_laplacian(const Field& u, double coeff) {
    const Grid& g = *u.grid();
    const int d = g.dim();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    const auto& flats = g.active_flat();
    Field out = Field::zeros(u.grid());
    for (std::size_t k = 0; k < flats.size(); ++k) {
        const auto ii = g.unflatten(flats[k]);
        double acc = -2.0 * d * u[static_cast<std::int64_t>(k)];
        for (int a = 0; a < d; ++a) {
            for (int sgn : {-1, 1}) {
                auto nb = ii;
                nb[static_cast<std::size_t>(a)] += sgn;
                if (nb[static_cast<std::size_t>(a)] < 0 || nb[static_cast<std::size_t>(a)] >= g.points_per_axis()) continue;
                const std::int64_t ord = g.active_ordinal(g.flat_index(std::span<const int>(nb.data(), static_cast<std::size_t>(d))));
                if (ord >= 0) acc += u[ord];
            }
        }
        out[static_cast<std::int64_t>(k)] = coeff * acc * inv_h2;
    }
    return out;
}

}  // namespace fraclap
