#pragma once

namespace fraclap::sf {

/// Riemann zeta for s > 1, via the accelerated alternating eta series.
double riemann_zeta(double s);

/// Dirichlet beta L(s, chi_4) for s > 0.
double dirichlet_beta(double s);

/// Upper incomplete gamma Gamma(a, x) for x > 0 and any real non-integer-pole a.
double upper_incomplete_gamma(double a, double x);

}  // namespace fraclap::sf
