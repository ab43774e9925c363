#include "fraclap/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclap {

namespace {
double norm_of(const Field& f, Norm p) { return p == Norm::l2 ? f.norm2() : f.norm_inf(); }
}  // namespace

double relative_error(const Field& u, const Field& v, Norm p) {
    if (!u.grid()->same_layout(*v.grid())) throw std::invalid_argument("relative_error: grids differ");
    const double nv = norm_of(v, p);
    if (nv == 0.0) throw std::invalid_argument("relative_error: reference field is identically zero");
    return norm_of(u - v, p) / nv;
}

RateEstimate richardson_rate(const Field& coarse, const Field& medium, const Field& fine, Norm p) {
    const GridPtr gc = coarse.grid();
    if (!medium.grid()->nests_over(*gc) || !fine.grid()->nests_over(*medium.grid()))
        throw std::invalid_argument("richardson_rate: grids are not a nested triple");
    const Field m_on_c = restrict_to_coarse(medium, gc);
    const Field f_on_c = restrict_to_coarse(restrict_to_coarse(fine, medium.grid()), gc);

    RateEstimate est;
    est.p = p;
    est.m_coarse = gc->points_per_axis();
    est.m_medium = medium.grid()->points_per_axis();
    est.m_fine = fine.grid()->points_per_axis();
    est.diff_fine_medium = norm_of(f_on_c - m_on_c, p);
    est.diff_medium_coarse = norm_of(m_on_c - coarse, p);
    if (est.diff_fine_medium == 0.0 || est.diff_medium_coarse == 0.0)
        throw std::invalid_argument("richardson_rate: zero difference between levels");
    est.rate = (std::log(est.diff_fine_medium) - std::log(est.diff_medium_coarse)) / std::log(0.5);
    return est;
}

double fit_rate(std::span<const double> sizes, std::span<const double> errors) {
    if (sizes.size() != errors.size() || sizes.size() < 3)
        throw std::invalid_argument("fit_rate: need at least 3 (size, error) pairs");
    const std::size_t n = sizes.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sizes[i] > 0.0) || !(errors[i] > 0.0))
            throw std::invalid_argument("fit_rate: sizes and errors must be positive");
        const double x = std::log(sizes[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_rate: degenerate abscissae");
    return (static_cast<double>(n) * sxy - sx * sy) / denom;
}

}  // namespace fraclap
