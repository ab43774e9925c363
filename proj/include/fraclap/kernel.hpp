#pragma once

#include <cstdint>
#include <vector>

#include "fraclap/grid.hpp"

namespace fraclap {

/**
 * Compactly supported C^3 polynomial window of radius delta, resolved by an
 * integral number of grid points.
 */
struct WindowSpec {
    double delta = 0.0;
    double h = 0.0;
    int radius_points = 0;

    static WindowSpec from_radius(double h, int radius_points);
};

/// W_delta(r): the degree-7 smoothstep bump; 1 at r=0, 0 for r >= delta.
double window_eval(double r, const WindowSpec& spec);

/// Normalizing constant C_{alpha,d} of the fractional Laplacian, alpha in (0,2).
double normalizing_constant(double alpha, int d);

/// S_d(s) = sum over nonzero integer lattice vectors of |j|_2^{-s}, s > d.
/// Exact zeta identities for d=1,2; theta-transform Epstein summation for d=3.
double lattice_sum(int d, double s, double tol);

/// Generic incomplete-gamma (theta-transform) Epstein summation, any d in 1..3.
double lattice_sum_epstein(int d, double s, double tol);

/// Everything needed to materialize the discrete operator at one (alpha, d, h).
struct OperatorConstants {
    double alpha = 0.0;
    int d = 0;
    double h = 0.0;
    double delta = 0.0;
    int radius_points = 0;
    double C = 0.0;   // normalizing constant C_{alpha,d}
    double A1 = 0.0;  // infinite lattice sum, scaled h^{-(d+alpha)}
    double A2 = 0.0;  // windowed second-moment lattice sum
    double A3 = 0.0;  // windowed second-moment radial integral (negative)
    double lattice_tol = 1e-12;
};

/// Finite windowed lattice moment sum: (1/2) sum_{j!=0} w(|jh|) (j1 h)^2 |jh|^{-(d+alpha)}.
double compute_A2(double alpha, int d, double h, const WindowSpec& spec);

/// Closed form of -(h^{-d}/2) * integral of w(|y|) (e1.y)^2 |y|^{-(d+alpha)} dy.
double compute_A3(double alpha, int d, double h, const WindowSpec& spec);

/// Bundle all operator constants; enforces A2 + A3 < 0.
OperatorConstants build_constants(double alpha, int d, double h, int radius_points = 20,
                                  double lattice_tol = 1e-12);

/**
 * Translation-invariant stencil of the discrete operator, tabulated on the
 * offset range {-(m-1)..m-1}^d. Entries depend only on |offset| per axis, so
 * only the nonnegative octant {0..m-1}^d is stored.
 */
class KernelTable {
public:
    KernelTable() = default;
    KernelTable(int d, int m, std::vector<double> octant);

    int dim() const { return d_; }
    int extent() const { return m_; }  // offsets range over -(m-1)..m-1 per axis

    /// Entry at a (possibly negative) offset vector of length dim().
    double at(std::span<const int> offset) const;
    /// Entry at a nonnegative octant offset (0 <= o_a <= m-1), flat lexicographic.
    double octant_at(std::int64_t flat) const { return octant_[static_cast<std::size_t>(flat)]; }
    const std::vector<double>& octant() const { return octant_; }

private:
    int d_ = 0;
    int m_ = 0;
    std::vector<double> octant_;
};

/// Materialize the fused stencil for a grid: diagonal A1 + finite-difference
/// correction, kernel tail -|y|^{-(d+alpha)}, all scaled by C h^d.
KernelTable build_stencil(const Grid& grid, const OperatorConstants& consts);

}  // namespace fraclap
