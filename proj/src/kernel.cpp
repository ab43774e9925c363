#include "fraclap/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fraclap/special.hpp"

namespace fraclap {

namespace {
constexpr double kPi = std::numbers::pi;
}

WindowSpec WindowSpec::from_radius(double h, int radius_points) {
    if (!(h > 0.0)) throw std::invalid_argument("window: spacing h must be positive");
    if (radius_points < 2) throw std::invalid_argument("window: radius must span at least 2 grid points");
    WindowSpec s;
    s.h = h;
    s.radius_points = radius_points;
    s.delta = h * static_cast<double>(radius_points);
    return s;
}

double window_eval(double r, const WindowSpec& spec) {
    if (r < 0.0) throw std::domain_error("window_eval: radius must be nonnegative");
    if (r >= spec.delta) return 0.0;
    const double t = r / spec.delta;
    const double t4 = t * t * t * t;
    return 1.0 + t4 * (-35.0 + t * (84.0 + t * (-70.0 + t * 20.0)));
}

double normalizing_constant(double alpha, int d) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("normalizing_constant: alpha must lie in (0,2)");
    if (d < 1 || d > 3) throw std::domain_error("normalizing_constant: dimension must be 1, 2 or 3");
    // |Gamma(-alpha/2)| via lgamma, which returns log|Gamma|.
    const double log_num = alpha * std::log(2.0) + std::lgamma((d + alpha) / 2.0);
    const double log_den = (d / 2.0) * std::log(kPi) + std::lgamma(-alpha / 2.0);
    return std::exp(log_num - log_den);
}

double lattice_sum_epstein(int d, double s, double tol) {
    if (d < 1 || d > 3) throw std::domain_error("lattice_sum: dimension must be 1, 2 or 3");
    if (!(s > static_cast<double>(d))) throw std::domain_error("lattice_sum: diverges unless s > d");
    if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("lattice_sum: tol must lie in (0, 1e-6]");
    // Mellin/theta split: terms decay like exp(-pi |j|^2), so the summation
    // radius follows from exp(-pi R^2) < tol with slack.
    int R = 2;
    while (std::exp(-kPi * static_cast<double>(R * R)) > 1e-3 * tol && R < 12) ++R;
    double total = 2.0 / (s - static_cast<double>(d)) - 2.0 / s;
    const double a_near = s / 2.0;
    const double a_far = (static_cast<double>(d) - s) / 2.0;
    const int lo2 = (d >= 2) ? -R : 0, hi2 = (d >= 2) ? R : 0;
    const int lo3 = (d >= 3) ? -R : 0, hi3 = (d >= 3) ? R : 0;
    for (int i = -R; i <= R; ++i) {
        for (int j = lo2; j <= hi2; ++j) {
            for (int k = lo3; k <= hi3; ++k) {
                const int q = i * i + j * j + k * k;
                if (q == 0) continue;
                const double x = kPi * static_cast<double>(q);
                total += sf::upper_incomplete_gamma(a_near, x) * std::pow(x, -a_near);
                total += sf::upper_incomplete_gamma(a_far, x) * std::pow(x, -a_far);
            }
        }
    }
    return std::pow(kPi, s / 2.0) / std::tgamma(s / 2.0) * total;
}

double lattice_sum(int d, double s, double tol) {
    if (d < 1 || d > 3) throw std::domain_error("lattice_sum: dimension must be 1, 2 or 3");
    if (!(s > static_cast<double>(d))) throw std::domain_error("lattice_sum: diverges unless s > d");
    if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("lattice_sum: tol must lie in (0, 1e-6]");
    switch (d) {
        case 1: return 2.0 * sf::riemann_zeta(s);
        case 2: return 4.0 * sf::riemann_zeta(s / 2.0) * sf::dirichlet_beta(s / 2.0);
        default: return lattice_sum_epstein(d, s, tol);
    }
}

double compute_A2(double alpha, int d, double h, const WindowSpec& spec) {
    // w vanishes for |j| >= radius_points, so the sum is finite. The first
    // coordinate squared averages to |j|^2 / d over the symmetry orbit.
    const int R = spec.radius_points;
    const double s = static_cast<double>(d) + alpha;
    double sum = 0.0;
    const int lo2 = (d >= 2) ? -R : 0, hi2 = (d >= 2) ? R : 0;
    const int lo3 = (d >= 3) ? -R : 0, hi3 = (d >= 3) ? R : 0;
    for (int i = -R; i <= R; ++i) {
        for (int j = lo2; j <= hi2; ++j) {
            for (int k = lo3; k <= hi3; ++k) {
                const double q = static_cast<double>(i * i + j * j + k * k);
                if (q == 0.0) continue;
                const double r = std::sqrt(q) * h;
                const double w = window_eval(r, spec);
                if (w == 0.0) continue;
                sum += w * (q / static_cast<double>(d)) * std::pow(q, -s / 2.0);
            }
        }
    }
    return 0.5 * std::pow(h, 2.0 - s) * sum;
}

double compute_A3(double alpha, int d, double h, const WindowSpec& spec) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("compute_A3: alpha must lie in (0,2)");
    // Radial reduction of the d-dimensional integral; the bracket is
    // int_0^1 t^{1-alpha} p(t) dt for the degree-7 window polynomial.
    static constexpr double omega[4] = {0.0, 2.0, 2.0 * kPi, 4.0 * kPi};
    const double bracket = 1.0 / (2.0 - alpha) - 35.0 / (6.0 - alpha) + 84.0 / (7.0 - alpha) -
                           70.0 / (8.0 - alpha) + 20.0 / (9.0 - alpha);
    return -0.5 * std::pow(h, -static_cast<double>(d)) * (omega[d] / static_cast<double>(d)) *
           std::pow(spec.delta, 2.0 - alpha) * bracket;
}

OperatorConstants build_constants(double alpha, int d, double h, int radius_points, double lattice_tol) {
    const WindowSpec spec = WindowSpec::from_radius(h, radius_points);
    OperatorConstants c;
    c.alpha = alpha;
    c.d = d;
    c.h = h;
    c.delta = spec.delta;
    c.radius_points = radius_points;
    c.lattice_tol = lattice_tol;
    c.C = normalizing_constant(alpha, d);
    c.A1 = lattice_sum(d, static_cast<double>(d) + alpha, lattice_tol) * std::pow(h, -(static_cast<double>(d) + alpha));
    c.A2 = compute_A2(alpha, d, h, spec);
    c.A3 = compute_A3(alpha, d, h, spec);
    if (!(c.A2 + c.A3 < 0.0))
        throw std::logic_error("build_constants: invariant A2 + A3 < 0 violated");
    return c;
}

KernelTable::KernelTable(int d, int m, std::vector<double> octant) : d_(d), m_(m), octant_(std::move(octant)) {
    std::int64_t expect = 1;
    for (int a = 0; a < d; ++a) expect *= m;
    if (static_cast<std::int64_t>(octant_.size()) != expect)
        throw std::invalid_argument("kernel table: octant size mismatch");
}

double KernelTable::at(std::span<const int> offset) const {
    std::int64_t f = 0;
    for (int a = 0; a < d_; ++a) {
        const int o = std::abs(offset[static_cast<std::size_t>(a)]);
        if (o > m_ - 1) throw std::out_of_range("kernel table: offset out of range");
        f = f * m_ + o;
    }
    return octant_[static_cast<std::size_t>(f)];
}

KernelTable build_stencil(const Grid& grid, const OperatorConstants& consts) {
    if (grid.dim() != consts.d) throw std::invalid_argument("build_stencil: dimension mismatch");
    if (std::abs(grid.spacing() - consts.h) > 1e-12 * consts.h)
        throw std::invalid_argument("build_stencil: constants were built for a different spacing");
    const int d = grid.dim();
    const int m = grid.points_per_axis();
    const double h = consts.h;
    const double scale = consts.C * std::pow(h, d);
    const double s = static_cast<double>(d) + consts.alpha;
    const double fd = (consts.A2 + consts.A3) / (h * h);

    std::int64_t n = 1;
    for (int a = 0; a < d; ++a) n *= m;
    std::vector<double> oct(static_cast<std::size_t>(n));

    const int lim2 = (d >= 2) ? m : 1;
    const int lim3 = (d >= 3) ? m : 1;
    std::size_t idx = 0;
    for (int o1 = 0; o1 < m; ++o1) {
        for (int o2 = 0; o2 < lim2; ++o2) {
            for (int o3 = 0; o3 < lim3; ++o3, ++idx) {
                const std::int64_t q = static_cast<std::int64_t>(o1) * o1 +
                                       static_cast<std::int64_t>(o2) * o2 +
                                       static_cast<std::int64_t>(o3) * o3;
                if (q == 0) {
                    oct[idx] = scale * (consts.A1 - 2.0 * d * fd);
                    continue;
                }
                double v = -std::pow(h * std::sqrt(static_cast<double>(q)), -s);
                if (o1 + o2 + o3 == 1) v += fd;  // nonnegative octant: |o|_1 == 1
                oct[idx] = scale * v;
            }
        }
    }
    return KernelTable(d, m, std::move(oct));
}

}  // namespace fraclap
