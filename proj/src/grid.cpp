#include "fraclap/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fraclap {

Box Box::cube(int d, double lo, double hi) {
    Box b;
    for (int a = 0; a < d; ++a) {
        b.lo[static_cast<std::size_t>(a)] = lo;
        b.hi[static_cast<std::size_t>(a)] = hi;
    }
    return b;
}

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

void Grid::finalize_mask() {
    n_full_ = ipow(m_, d_);
    active_flat_.clear();
    active_pos_.assign(static_cast<std::size_t>(n_full_), -1);
    for (std::int64_t f = 0; f < n_full_; ++f) {
        if (active_[static_cast<std::size_t>(f)]) {
            active_pos_[static_cast<std::size_t>(f)] = static_cast<std::int64_t>(active_flat_.size());
            active_flat_.push_back(f);
        }
    }
    n_active_ = static_cast<std::int64_t>(active_flat_.size());
}

std::shared_ptr<const Grid> Grid::make_full(int d, int m, const Box& box) {
    if (d < 1 || d > 3) throw std::invalid_argument("grid: dimension must be 1, 2 or 3");
    if (m < 3) throw std::invalid_argument("grid: need at least 3 points per axis");
    const double ext0 = box.hi[0] - box.lo[0];
    if (!(ext0 > 0.0)) throw std::invalid_argument("grid: box is empty");
    for (int a = 1; a < d; ++a) {
        const double ext = box.hi[static_cast<std::size_t>(a)] - box.lo[static_cast<std::size_t>(a)];
        if (std::abs(ext - ext0) > 1e-12 * std::abs(ext0))
            throw std::invalid_argument("grid: axis extents must agree (single spacing h)");
    }
    auto g = std::shared_ptr<Grid>(new Grid());
    g->d_ = d;
    g->m_ = m;
    g->box_ = box;
    g->h_ = ext0 / static_cast<double>(m + 1);
    g->active_.assign(static_cast<std::size_t>(ipow(m, d)), 1);
    g->finalize_mask();
    return g;
}

std::shared_ptr<const Grid> Grid::make_l_shape(int m) {
    if (m < 3 || m % 2 == 0) throw std::invalid_argument("l_shape: m must be odd and >= 3");
    auto g = std::shared_ptr<Grid>(new Grid());
    g->d_ = 2;
    g->m_ = m;
    g->box_ = Box::cube(2, 0.0, 1.0);
    g->h_ = 1.0 / static_cast<double>(m + 1);
    g->active_.assign(static_cast<std::size_t>(ipow(m, 2)), 1);
    const int block = (m + 1) / 2;
    for (int j1 = m - block; j1 < m; ++j1)
        for (int j2 = m - block; j2 < m; ++j2)
            g->active_[static_cast<std::size_t>(j1) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j2)] = 0;
    g->finalize_mask();
    return g;
}

std::int64_t Grid::flat_index(std::span<const int> idx0) const {
    std::int64_t f = 0;
    for (int a = 0; a < d_; ++a) f = f * m_ + idx0[static_cast<std::size_t>(a)];
    return f;
}

std::array<int, 3> Grid::unflatten(std::int64_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = d_ - 1; a >= 0; --a) {
        idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % m_);
        flat /= m_;
    }
    return idx;
}

std::array<double, 3> Grid::point(std::span<const int> idx0) const {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < d_; ++a)
        x[static_cast<std::size_t>(a)] =
            box_.lo[static_cast<std::size_t>(a)] + h_ * static_cast<double>(idx0[static_cast<std::size_t>(a)] + 1);
    return x;
}

std::array<int, 3> Grid::nearest_index(std::span<const double> x) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = 0; a < d_; ++a) {
        const double t = (x[static_cast<std::size_t>(a)] - box_.lo[static_cast<std::size_t>(a)]) / h_ - 1.0;
        int j = static_cast<int>(std::lround(t));
        if (j < 0) j = 0;
        if (j > m_ - 1) j = m_ - 1;
        idx[static_cast<std::size_t>(a)] = j;
    }
    return idx;
}

bool Grid::same_layout(const Grid& other) const {
    if (d_ != other.d_ || m_ != other.m_ || n_active_ != other.n_active_) return false;
    for (int a = 0; a < d_; ++a) {
        if (box_.lo[static_cast<std::size_t>(a)] != other.box_.lo[static_cast<std::size_t>(a)]) return false;
        if (box_.hi[static_cast<std::size_t>(a)] != other.box_.hi[static_cast<std::size_t>(a)]) return false;
    }
    return active_ == other.active_;
}

bool Grid::nests_over(const Grid& coarse) const {
    if (d_ != coarse.d_ || m_ != 2 * coarse.m_ + 1) return false;
    for (int a = 0; a < d_; ++a) {
        if (box_.lo[static_cast<std::size_t>(a)] != coarse.box_.lo[static_cast<std::size_t>(a)]) return false;
        if (box_.hi[static_cast<std::size_t>(a)] != coarse.box_.hi[static_cast<std::size_t>(a)]) return false;
    }
    for (std::int64_t cf : coarse.active_flat_) {
        const auto cidx = coarse.unflatten(cf);
        std::array<int, 3> fidx{0, 0, 0};
        for (int a = 0; a < d_; ++a) fidx[static_cast<std::size_t>(a)] = 2 * cidx[static_cast<std::size_t>(a)] + 1;
        if (!active_at_flat(flat_index(std::span<const int>(fidx.data(), static_cast<std::size_t>(d_)))))
            return false;
    }
    return true;
}

Field Field::zeros(GridPtr grid) {
    Field f;
    f.grid_ = std::move(grid);
    f.values_.assign(static_cast<std::size_t>(f.grid_->n_active()), 0.0);
    return f;
}

Field Field::sample(GridPtr grid, const std::function<double(std::span<const double>)>& fn) {
    Field f = zeros(grid);
    const Grid& g = *f.grid_;
    std::size_t k = 0;
    for (std::int64_t flat : g.active_flat()) {
        const auto idx = g.unflatten(flat);
        const auto x = g.point(std::span<const int>(idx.data(), static_cast<std::size_t>(g.dim())));
        f.values_[k++] = fn(std::span<const double>(x.data(), static_cast<std::size_t>(g.dim())));
    }
    return f;
}

Field Field::from_values(GridPtr grid, std::vector<double> values) {
    if (static_cast<std::int64_t>(values.size()) != grid->n_active())
        throw std::invalid_argument("field: value count does not match active points");
    Field f;
    f.grid_ = std::move(grid);
    f.values_ = std::move(values);
    return f;
}

double Field::norm2() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
}

double Field::norm_inf() const {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

double Field::dot(const Field& other) const {
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * other.values_[i];
    return s;
}

namespace {
void check_same_grid(const Field& a, const Field& b) {
    if (!a.grid() || !b.grid() || !a.grid()->same_layout(*b.grid()))
        throw std::invalid_argument("field: grids do not match");
}
}  // namespace

Field& Field::operator+=(const Field& other) {
    check_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    check_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double c, Field a) { return a *= c; }

Field restrict_to_coarse(const Field& fine, GridPtr coarse) {
    const Grid& gf = *fine.grid();
    const Grid& gc = *coarse;
    if (!gf.nests_over(gc))
        throw std::invalid_argument("restrict: grids are not nested (need m_fine = 2*m_coarse + 1, same box)");
    Field out = Field::zeros(std::move(coarse));
    std::size_t k = 0;
    for (std::int64_t cf : gc.active_flat()) {
        const auto cidx = gc.unflatten(cf);
        std::array<int, 3> fidx{0, 0, 0};
        for (int a = 0; a < gc.dim(); ++a) fidx[static_cast<std::size_t>(a)] = 2 * cidx[static_cast<std::size_t>(a)] + 1;
        const std::int64_t ff = gf.flat_index(std::span<const int>(fidx.data(), static_cast<std::size_t>(gc.dim())));
        out[static_cast<std::int64_t>(k++)] = fine[gf.active_ordinal(ff)];
    }
    return out;
}

}  // namespace fraclap
