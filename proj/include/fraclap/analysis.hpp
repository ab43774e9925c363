#pragma once

#include <span>

#include "fraclap/grid.hpp"

namespace fraclap {

enum class Norm { l2, linf };

/// |u - v|_p / |v|_p on a common grid; throws if the reference vanishes.
double relative_error(const Field& u, const Field& v, Norm p = Norm::l2);

struct RateEstimate {
    Norm p = Norm::l2;
    double rate = 0.0;
    double diff_fine_medium = 0.0;    // |f_f - f_m|_p on the coarse grid
    double diff_medium_coarse = 0.0;  // |f_m - f_c|_p on the coarse grid
    int m_coarse = 0, m_medium = 0, m_fine = 0;
};

/// Empirical convergence order from three nested grids (m doubling), with all
/// differences evaluated on the common coarse grid after restriction.
RateEstimate richardson_rate(const Field& coarse, const Field& medium, const Field& fine, Norm p = Norm::l2);

/// Least-squares slope of log(error) against log(size).
double fit_rate(std::span<const double> sizes, std::span<const double> errors);

}  // namespace fraclap
