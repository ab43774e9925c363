#pragma once

#include <span>
#include <string>

#include "fraclap/grid.hpp"

namespace fraclap {

/// Quartic polynomial right-hand side of the smooth 1D benchmark,
/// the terminating Gauss hypergeometric series 2F1((1+alpha)/2, -2; 1/2; x^2).
double rhs_smooth_1d(double alpha, double x);

/// Proportionality constant of the smooth 1D solution.
double smooth_constant_1d(double alpha);

/// u(x) = K_alpha (1 - x^2)^(2 + alpha/2) on (-1,1), zero outside;
/// satisfies the fractional Poisson problem with rhs_smooth_1d.
double sol_smooth_1d(double alpha, double x);

/// Proportionality constant of the unit-ball solution with constant forcing.
double rough_constant_1d(double alpha);

/// u(x) = K'_alpha (1 - x^2)^(alpha/2) on (-1,1), zero outside;
/// the classical closed-form solution for f == 1 on the interval.
double sol_rough_1d(double alpha, double x);

/// Separable squared-raised-cosine bump on [0,1]^d with per-axis frequencies.
double bump(std::span<const double> x, std::span<const int> nu);

/// Per-axis frequencies of the modulated parabolic initial condition.
std::array<int, 3> parabolic_frequencies();

/**
 * Named benchmark configurations addressable from the command line.
 * Cases: smooth1d, rough1d, bump, ones, parabolic_ic.
 */
struct ReferenceCase {
    std::string name;
    bool has_solution = false;
    Box default_box(int d) const;
    Field rhs_field(double alpha, GridPtr grid) const;
    Field solution_field(double alpha, GridPtr grid) const;  // throws if !has_solution
    Field initial_field(GridPtr grid) const;                 // parabolic_ic only
};

ReferenceCase reference_case(const std::string& name);

}  // namespace fraclap
