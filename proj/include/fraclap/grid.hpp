#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace fraclap {

/// Axis-aligned box; only the first `d` axes of a grid are meaningful.
struct Box {
    std::array<double, 3> lo{0.0, 0.0, 0.0};
    std::array<double, 3> hi{1.0, 1.0, 1.0};

    static Box cube(int d, double lo, double hi);
};

/**
 * Uniform Cartesian lattice of m interior points per axis on an axis-aligned
 * box, with an activity mask supporting occluded domains (e.g. L-shapes).
 *
 * Lattice indices run j = 1..m per axis with coordinates y_j = lo + h*j and
 * spacing h = (hi - lo)/(m + 1); the boundary itself carries no unknowns.
 * Active points are ordered lexicographically by (j1, ..., jd).
 *
 * Grids are immutable after construction and shared via shared_ptr.
 */
class Grid {
public:
    /// Full grid: every lattice point active. All axis extents must agree.
    static std::shared_ptr<const Grid> make_full(int d, int m, const Box& box);

    /// L-shaped 2D grid on [0,1]^2: the upper-right corner block of
    /// (m+1)/2 points per axis is removed. Requires odd m.
    static std::shared_ptr<const Grid> make_l_shape(int m);

    int dim() const { return d_; }
    int points_per_axis() const { return m_; }
    const Box& box() const { return box_; }
    double spacing() const { return h_; }
    std::int64_t n_full() const { return n_full_; }
    std::int64_t n_active() const { return n_active_; }
    bool is_full() const { return n_active_ == n_full_; }

    bool active_at_flat(std::int64_t flat) const { return active_[static_cast<std::size_t>(flat)] != 0; }

    /// Flat lattice index (lexicographic, j1 slowest) from 0-based per-axis indices.
    std::int64_t flat_index(std::span<const int> idx0) const;
    /// Inverse of flat_index.
    std::array<int, 3> unflatten(std::int64_t flat) const;

    /// Physical coordinates of the lattice point with 0-based indices idx0.
    std::array<double, 3> point(std::span<const int> idx0) const;
    /// Nearest lattice point (0-based indices) to a physical coordinate.
    std::array<int, 3> nearest_index(std::span<const double> x) const;

    /// Flat lattice indices of active points, ascending (= lexicographic order).
    const std::vector<std::int64_t>& active_flat() const { return active_flat_; }
    /// Active ordinal of a flat lattice index, or -1 if inactive.
    std::int64_t active_ordinal(std::int64_t flat) const { return active_pos_[static_cast<std::size_t>(flat)]; }

    /// True if the other grid has identical layout (d, m, box, mask).
    bool same_layout(const Grid& other) const;
    /// True if `coarse` is the next-coarser nested grid (m = 2*m_c + 1, same
    /// box) and every coarse active point maps onto an active point here.
    bool nests_over(const Grid& coarse) const;

private:
    Grid() = default;

    int d_ = 0;
    int m_ = 0;
    Box box_;
    double h_ = 0.0;
    std::int64_t n_full_ = 0;
    std::int64_t n_active_ = 0;
    std::vector<std::uint8_t> active_;
    std::vector<std::int64_t> active_flat_;
    std::vector<std::int64_t> active_pos_;

    void finalize_mask();
};

using GridPtr = std::shared_ptr<const Grid>;

/**
 * Real-valued function sampled on the active points of a grid, stored in
 * lexicographic active order. Fields are value types; the grid is shared.
 */
class Field {
public:
    Field() = default;
    static Field zeros(GridPtr grid);
    /// Sample f(x) at every active point (x padded with zeros beyond dim).
    static Field sample(GridPtr grid, const std::function<double(std::span<const double>)>& f);
    static Field from_values(GridPtr grid, std::vector<double> values);

    const GridPtr& grid() const { return grid_; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
    double& operator[](std::int64_t i) { return values_[static_cast<std::size_t>(i)]; }

    double norm2() const;
    double norm_inf() const;
    double dot(const Field& other) const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double c);

private:
    GridPtr grid_;
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double c, Field a);

/// Sample a fine-grid field on the next-coarser nested grid; coordinates of
/// coarse points coincide exactly with fine points, so values copy bitwise.
Field restrict_to_coarse(const Field& fine, GridPtr coarse);

}  // namespace fraclap
