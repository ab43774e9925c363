#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "fraclap/grid.hpp"
#include "fraclap/kernel.hpp"

namespace fraclap {

/**
 * The discrete fractional Laplacian M as a fast translation-invariant
 * operator: the fused stencil is embedded in a circulant on a padded lattice
 * and applied through real-to-complex FFTs, then restricted to active points.
 * Zero-extension of the input realizes the extended homogeneous Dirichlet
 * condition, including on occluded grids.
 *
 * Immutable after construction; apply() may be called concurrently (each call
 * uses its own scratch buffers).
 */
class FracLapOperator {
public:
    FracLapOperator(GridPtr grid, const OperatorConstants& consts);
    ~FracLapOperator();
    FracLapOperator(const FracLapOperator&) = delete;
    FracLapOperator& operator=(const FracLapOperator&) = delete;

    const GridPtr& grid() const { return grid_; }
    const OperatorConstants& constants() const { return consts_; }
    const KernelTable& table() const { return table_; }
    const std::vector<std::complex<double>>& multiplier() const { return multiplier_; }
    double build_seconds() const { return build_seconds_; }

    /// M u via the cached spectral multiplier, O(N log N).
    Field apply(const Field& u) const;

    /// Literal O(N^2) evaluation of the quadrature sum; the testing oracle.
    /// Refuses grids with more active points than `cap`.
    Field apply_dense(const Field& u, std::int64_t cap = 10000) const;

private:
    GridPtr grid_;
    OperatorConstants consts_;
    KernelTable table_;
    std::array<int, 3> embed_{1, 1, 1};
    std::int64_t embed_total_ = 1;
    std::int64_t spec_total_ = 1;
    std::vector<std::complex<double>> multiplier_;
    void* plan_fwd_ = nullptr;  // fftw_plan, opaque here
    void* plan_bwd_ = nullptr;
    double build_seconds_ = 0.0;
};

/// coeff * L_FD u with the (2d+1)-point second-difference stencil; neighbors
/// outside the active set contribute zero (homogeneous Dirichlet).
Field apply_fd_laplacian(const Field& u, double coeff);

/// Smallest integer >= n whose prime factors are all in {2, 3, 5, 7}.
int next_fast_size(int n);

}  // namespace fraclap
