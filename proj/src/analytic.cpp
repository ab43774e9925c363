#include "fraclap/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fraclap {

namespace {
constexpr double kPi = std::numbers::pi;
}

double rhs_smooth_1d(double alpha, double x) {
    const double x2 = x * x;
    return 1.0 - 2.0 * (1.0 + alpha) * x2 + (1.0 + alpha) * (3.0 + alpha) / 3.0 * x2 * x2;
}

double smooth_constant_1d(double alpha) {
    return 2.0 * std::sqrt(kPi) /
           (std::pow(2.0, alpha) * std::tgamma(alpha / 2.0 + 3.0) * std::tgamma((1.0 + alpha) / 2.0));
}

double sol_smooth_1d(double alpha, double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return smooth_constant_1d(alpha) * std::pow(1.0 - x * x, 2.0 + alpha / 2.0);
}

double rough_constant_1d(double alpha) {
    return std::sqrt(kPi) /
           (std::pow(2.0, alpha) * std::tgamma(1.0 + alpha / 2.0) * std::tgamma((1.0 + alpha) / 2.0));
}

double sol_rough_1d(double alpha, double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return rough_constant_1d(alpha) * std::pow(1.0 - x * x, alpha / 2.0);
}

double bump(std::span<const double> x, std::span<const int> nu) {
    double v = 1.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double c = 0.25 * (1.0 + std::cos(2.0 * kPi * nu[a] * x[a] - kPi));
        v *= c * (1.0 + std::cos(2.0 * kPi * nu[a] * x[a] - kPi));
    }
    return v;
}

std::array<int, 3> parabolic_frequencies() { return {3, 11, 2}; }

Box ReferenceCase::default_box(int d) const {
    if (name == "smooth1d" || name == "rough1d") return Box::cube(1, -1.0, 1.0);
    return Box::cube(d, 0.0, 1.0);
}

Field ReferenceCase::rhs_field(double alpha, GridPtr grid) const {
    const int d = grid->dim();
    if (name == "smooth1d") {
        if (d != 1) throw std::invalid_argument("case smooth1d is one-dimensional");
        return Field::sample(grid, [alpha](std::span<const double> x) { return rhs_smooth_1d(alpha, x[0]); });
    }
    if (name == "rough1d") {
        if (d != 1) throw std::invalid_argument("case rough1d is one-dimensional");
        return Field::sample(grid, [](std::span<const double>) { return 1.0; });
    }
    if (name == "ones") return Field::sample(grid, [](std::span<const double>) { return 1.0; });
    if (name == "bump") {
        const std::array<int, 3> ones{1, 1, 1};
        return Field::sample(grid, [d, &ones](std::span<const double> x) {
            return bump(x, std::span<const int>(ones.data(), static_cast<std::size_t>(d)));
        });
    }
    if (name == "parabolic_ic") return Field::zeros(grid);  // f == 0 for the evolution case
    throw std::invalid_argument("unknown reference case: " + name);
}

Field ReferenceCase::solution_field(double alpha, GridPtr grid) const {
    if (!has_solution) throw std::invalid_argument("case " + name + " has no closed-form solution");
    if (name == "smooth1d")
        return Field::sample(grid, [alpha](std::span<const double> x) { return sol_smooth_1d(alpha, x[0]); });
    return Field::sample(grid, [alpha](std::span<const double> x) { return sol_rough_1d(alpha, x[0]); });
}

Field ReferenceCase::initial_field(GridPtr grid) const {
    if (name != "parabolic_ic") throw std::invalid_argument("case " + name + " has no initial condition");
    const int d = grid->dim();
    const auto nu = parabolic_frequencies();
    return Field::sample(grid, [d, &nu](std::span<const double> x) {
        return bump(x, std::span<const int>(nu.data(), static_cast<std::size_t>(d)));
    });
}

ReferenceCase reference_case(const std::string& name) {
    if (name == "smooth1d") return {name, true};
    if (name == "rough1d") return {name, true};
    if (name == "bump" || name == "ones" || name == "parabolic_ic") return {name, false};
    throw std::invalid_argument("unknown reference case: " + name);
}

}  // namespace fraclap
