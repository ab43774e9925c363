#pragma once

#include <memory>
#include <vector>

#include "fraclap/grid.hpp"

namespace fraclap {

/**
 * Exact solver for (sigma I + gamma L) z = r where L is the (2d+1)-point
 * finite-difference negative Laplacian with homogeneous Dirichlet data,
 * including the 1/h^2 scaling.
 *
 * Full grids diagonalize in the tensor discrete-sine basis (DST-I per axis);
 * occluded grids fall back to a sparse symmetric factorization with a
 * fill-reducing ordering. Immutable after build; apply() is safe to call
 * concurrently.
 */
class PoissonPreconditioner {
public:
    enum class Backend { spectral, factorized };
    enum class BackendChoice { automatic, spectral, factorized };

    PoissonPreconditioner(GridPtr grid, double sigma, double gamma,
                          BackendChoice choice = BackendChoice::automatic);
    ~PoissonPreconditioner();
    PoissonPreconditioner(const PoissonPreconditioner&) = delete;
    PoissonPreconditioner& operator=(const PoissonPreconditioner&) = delete;

    const GridPtr& grid() const { return grid_; }
    double sigma() const { return sigma_; }
    double gamma() const { return gamma_; }
    Backend backend() const { return backend_; }
    double build_seconds() const { return build_seconds_; }

    /// z with (sigma I + gamma L) z = r, exact up to roundoff.
    Field apply(const Field& r) const;

private:
    GridPtr grid_;
    double sigma_ = 0.0;
    double gamma_ = 0.0;
    Backend backend_ = Backend::spectral;
    double build_seconds_ = 0.0;

    // spectral backend
    std::vector<double> axis_eigs_;  // (2 - 2 cos(pi k/(m+1)))/h^2, k = 1..m
    void* dst_plan_ = nullptr;       // fftw_plan (RODFT00 in every axis)

    // factorized backend
    struct FactorImpl;
    std::unique_ptr<FactorImpl> factor_;
};

}  // namespace fraclap
