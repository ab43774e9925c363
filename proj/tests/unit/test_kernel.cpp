#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "../support/oracles.hpp"
#include "fraclap/kernel.hpp"

using namespace fraclap;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("window values and smoothstep symmetry") {
    const auto spec = WindowSpec::from_radius(0.01, 20);
    CHECK(window_eval(0.0, spec) == 1.0);
    CHECK(window_eval(spec.delta, spec) == 0.0);
    CHECK(window_eval(2.0 * spec.delta, spec) == 0.0);
    CHECK(window_eval(0.5 * spec.delta, spec) == doctest::Approx(0.5).epsilon(1e-15));
    for (double t : {0.1, 0.33, 0.77}) {
        const double sum = window_eval(t * spec.delta, spec) + window_eval((1.0 - t) * spec.delta, spec);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)window_eval(-0.1, spec), std::domain_error);
}

TEST_CASE("window is C^3 at the support edge") {
    // p(t) = 1 - 35 t^4 + 84 t^5 - 70 t^6 + 20 t^7; evaluate exact derivatives at t = 1.
    const std::array<double, 8> coef{1, 0, 0, 0, -35, 84, -70, 20};
    auto deriv_at_one = [&](int order) {
        double v = 0.0;
        for (int k = order; k <= 7; ++k) {
            double fac = 1.0;
            for (int j = 0; j < order; ++j) fac *= static_cast<double>(k - j);
            v += coef[static_cast<std::size_t>(k)] * fac;
        }
        return v;
    };
    CHECK(std::abs(deriv_at_one(0)) <= 1e-12);
    CHECK(std::abs(deriv_at_one(1)) <= 1e-12);
    CHECK(std::abs(deriv_at_one(2)) <= 1e-12);
    CHECK(std::abs(deriv_at_one(3)) <= 1e-12);
    // and by centered finite differences of the implementation
    const auto spec = WindowSpec::from_radius(1.0, 2);  // delta = 2
    const double d = spec.delta, eps = 1e-3;
    auto w = [&](double r) { return r < 0 ? window_eval(-r, spec) : window_eval(r, spec); };
    const double w1 = (w(d + eps) - w(d - eps)) / (2 * eps);
    const double w2 = (w(d + eps) - 2 * w(d) + w(d - eps)) / (eps * eps);
    CHECK(std::abs(w1) < 1e-6);
    CHECK(std::abs(w2) < 1e-3);
}

TEST_CASE("1 - w(r) = O(r^4) near zero") {
    const auto spec = WindowSpec::from_radius(0.05, 20);  // delta = 1
    for (double rt = 1e-8; rt <= 1e-2 + 1e-15; rt *= 10.0) {
        const double r = rt * spec.delta;
        const double ratio = (1.0 - window_eval(r, spec)) / std::pow(r, 4);
        CHECK(std::abs(ratio) <= 36.0);  // |p4| = 35 plus slack for higher terms
    }
}

TEST_CASE("normalizing constant") {
    CHECK(normalizing_constant(1.0, 1) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    // high-precision gamma oracle values
    CHECK(normalizing_constant(0.5, 2) == doctest::Approx(0.08324198387542506549).epsilon(1e-13));
    CHECK(normalizing_constant(1.25, 3) == doctest::Approx(0.1193161467749963508).epsilon(1e-13));
    CHECK(normalizing_constant(0.75, 1) == doctest::Approx(0.2702778976400859626).epsilon(1e-13));
    CHECK(normalizing_constant(1.75, 2) == doctest::Approx(0.1185589758816442430).epsilon(1e-13));
    // continuity near alpha -> 2^-
    CHECK(std::isfinite(normalizing_constant(1.999999, 1)));
    CHECK_THROWS_AS((void)normalizing_constant(2.0, 1), std::domain_error);
    CHECK_THROWS_AS((void)normalizing_constant(0.0, 1), std::domain_error);
}

TEST_CASE("lattice sums match independent identities and tabulated values") {
    // d=1: 2 zeta(s); Basel at s = 2
    CHECK(lattice_sum(1, 2.0, 1e-12) == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-13));
    CHECK(lattice_sum(1, 1.75, 1e-12) == doctest::Approx(3.924640198902683980).epsilon(1e-13));
    // d=2 tabulated via 4 zeta(s/2) beta(s/2) at 40 digits
    CHECK(lattice_sum(2, 3.25, 1e-12) == doctest::Approx(7.813296195404942062).epsilon(1e-11));
    // d=3 tabulated via the same Mellin split at 40 digits
    CHECK(lattice_sum(3, 4.75, 1e-12) == doctest::Approx(11.24410328312921353).epsilon(1e-12));
    CHECK(lattice_sum(3, 3.25, 1e-12) == doctest::Approx(54.12533704843893907).epsilon(1e-12));
    CHECK_THROWS_AS((void)lattice_sum(2, 2.0, 1e-12), std::domain_error);
    CHECK_THROWS_AS((void)lattice_sum(1, 1.5, 1e-3), std::invalid_argument);
}

TEST_CASE("generic epstein path agrees with the zeta identities") {
    for (double alpha : {0.25, 0.75, 1.25, 1.75}) {
        const double s1 = 1.0 + alpha, s2 = 2.0 + alpha;
        CHECK(lattice_sum_epstein(1, s1, 1e-12) == doctest::Approx(lattice_sum(1, s1, 1e-12)).epsilon(1e-12));
        CHECK(lattice_sum_epstein(2, s2, 1e-12) == doctest::Approx(lattice_sum(2, s2, 1e-12)).epsilon(1e-12));
    }
}

TEST_CASE("d=3 lattice sum against brute force with smooth-cutoff tail") {
    // Split the sum with a C^3 radial cutoff: the near part is summed
    // directly, the far part is smooth on the whole lattice so Poisson
    // summation makes its integral approximation accurate far beyond the
    // naive sharp-truncation shell estimate.
    const double s = 4.75;
    const int J = 60;
    const double w0 = J / 2.0;
    auto cutoff = [w0, J](double r) {
        const double t = (r - w0) / (static_cast<double>(J) - w0);
        if (t <= 0.0) return 1.0;
        if (t >= 1.0) return 0.0;
        const double t4 = t * t * t * t;
        return 1.0 + t4 * (-35.0 + t * (84.0 + t * (-70.0 + t * 20.0)));
    };
    double near = 0.0;
    for (int i = -J; i <= J; ++i)
        for (int j = -J; j <= J; ++j)
            for (int k = -J; k <= J; ++k) {
                const double q = static_cast<double>(i) * i + static_cast<double>(j) * j +
                                 static_cast<double>(k) * k;
                if (q != 0.0) near += std::pow(q, -s / 2.0) * cutoff(std::sqrt(q));
            }
    auto far_integrand = [&](double r) { return 4.0 * kPi * std::pow(r, 2.0 - s) * (1.0 - cutoff(r)); };
    const double far = oracles::adaptive_simpson(far_integrand, w0, static_cast<double>(J), 1e-14, 40) +
                       4.0 * kPi * std::pow(static_cast<double>(J), 3.0 - s) / (s - 3.0);
    CHECK(lattice_sum(3, s, 1e-12) == doctest::Approx(near + far).epsilon(1e-9));
}

TEST_CASE("A2 matches a literal first-coordinate loop") {
    // implementation exploits the symmetry j1^2 -> |j|^2/d; the oracle does not
    for (int d : {1, 2, 3}) {
        const double alpha = 1.5, h = 1.0 / 512.0;
        const auto spec = WindowSpec::from_radius(h, d == 3 ? 10 : 20);
        const int R = spec.radius_points;
        double direct = 0.0;
        const int lo2 = d >= 2 ? -R : 0, hi2 = d >= 2 ? R : 0;
        const int lo3 = d >= 3 ? -R : 0, hi3 = d >= 3 ? R : 0;
        for (int i = -R; i <= R; ++i)
            for (int j = lo2; j <= hi2; ++j)
                for (int k = lo3; k <= hi3; ++k) {
                    if (i == 0 && j == 0 && k == 0) continue;
                    const double r = h * std::sqrt(static_cast<double>(i * i + j * j + k * k));
                    direct += window_eval(r, spec) * (i * h) * (i * h) / std::pow(r, d + alpha);
                }
        direct *= 0.5;
        CHECK(compute_A2(alpha, d, h, spec) == doctest::Approx(direct).epsilon(1e-14));
        CHECK(compute_A2(alpha, d, h, spec) > 0.0);
    }
}

TEST_CASE("A2 with radius 2 reduces to the single surviving shell in 1D") {
    const double h = 1.0, alpha = 1.0;
    const auto spec = WindowSpec::from_radius(h, 2);
    // only j = +-1 contribute: w(2h) = w(delta) = 0
    const double expect = window_eval(h, spec) * 1.0 / std::pow(h, alpha - 1.0);
    CHECK(compute_A2(alpha, 1, h, spec) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("A3 closed form against adaptive quadrature of the radial integral") {
    for (auto [alpha, d, h, R] : {std::tuple{1.5, 1, 1.0, 1}, std::tuple{1.5, 1, 1.0 / 64, 20},
                                  std::tuple{0.75, 2, 1.0 / 128, 20}, std::tuple{1.25, 3, 1.0 / 32, 20}}) {
        const auto spec = WindowSpec::from_radius(h, std::max(R, 2));
        const double delta = spec.delta;
        // substitute r = v^{1/(2-alpha)} to absorb the r^{1-alpha} endpoint factor
        const double p = 2.0 - alpha;
        auto g = [&](double v) { return window_eval(std::pow(v, 1.0 / p), spec) / p; };
        const double radial = oracles::adaptive_simpson(g, 0.0, std::pow(delta, p), 1e-15, 52);
        static constexpr double omega[4] = {0.0, 2.0, 2.0 * kPi, 4.0 * kPi};
        const double expect = -0.5 * std::pow(h, -d) * (omega[d] / d) * radial;
        CHECK(compute_A3(alpha, d, h, spec) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(compute_A3(alpha, d, h, spec) < 0.0);
    }
}

TEST_CASE("constants bundle: scaling identities and sign invariant") {
    for (int d : {1, 2, 3}) {
        for (double alpha : {0.25, 0.75, 1.25, 1.75}) {
            const double h = 1.0 / 128.0;
            const auto c1 = build_constants(alpha, d, h, 20);
            const auto c2 = build_constants(alpha, d, h / 2.0, 20);
            const double s = d + alpha;
            CHECK(c1.A1 * std::pow(h, s) == doctest::Approx(c2.A1 * std::pow(h / 2.0, s)).epsilon(1e-12));
            CHECK(c1.A2 * std::pow(h, s - 2.0) == doctest::Approx(c2.A2 * std::pow(h / 2.0, s - 2.0)).epsilon(1e-12));
            CHECK(c1.A3 * std::pow(h, s - 2.0) == doctest::Approx(c2.A3 * std::pow(h / 2.0, s - 2.0)).epsilon(1e-12));
            CHECK(c1.A2 + c1.A3 < 0.0);
        }
    }
    // d=1: A1 = 2 zeta(1 + alpha) h^{-(1+alpha)}
    const auto c = build_constants(0.75, 1, 1.0 / 512.0, 20);
    CHECK(c.A1 == doctest::Approx(3.924640198902683980 * std::pow(512.0, 1.75)).epsilon(1e-12));
}

TEST_CASE("stencil table: symmetry, signs, diagonal scaling") {
    auto grid = Grid::make_full(2, 9, Box::cube(2, 0.0, 1.0));
    const auto consts = build_constants(1.25, 2, grid->spacing(), 3);
    const auto table = build_stencil(*grid, consts);
    // full hyperoctahedral symmetry and negative tail
    for (int o1 = -8; o1 <= 8; ++o1) {
        for (int o2 = -8; o2 <= 8; ++o2) {
            const std::array<int, 2> o{o1, o2};
            const std::array<int, 2> neg{-o1, -o2};
            const std::array<int, 2> perm{o2, o1};
            const double v = table.at(std::span<const int>(o.data(), 2));
            CHECK(v == table.at(std::span<const int>(neg.data(), 2)));
            CHECK(v == table.at(std::span<const int>(perm.data(), 2)));
            if (std::abs(o1) + std::abs(o2) > 1) CHECK(v < 0.0);
        }
    }
    const std::array<int, 2> zero{0, 0};
    CHECK(table.at(std::span<const int>(zero.data(), 2)) > 0.0);

    // diagonal grows like h^{-alpha} for fixed box
    auto grid2 = Grid::make_full(2, 19, Box::cube(2, 0.0, 1.0));
    const auto consts2 = build_constants(1.25, 2, grid2->spacing(), 3);
    const auto table2 = build_stencil(*grid2, consts2);
    const double ratio = table2.at(std::span<const int>(zero.data(), 2)) /
                         table.at(std::span<const int>(zero.data(), 2));
    const double expect = std::pow(grid->spacing() / grid2->spacing(), 1.25);
    CHECK(ratio == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("1D dense row sums are positive (diagonal dominance at matrix level)") {
    auto grid = Grid::make_full(1, 101, Box::cube(1, -1.0, 1.0));
    const auto consts = build_constants(1.5, 1, grid->spacing(), 20);
    const auto table = build_stencil(*grid, consts);
    const int m = grid->points_per_axis();
    for (int i : {0, 25, 50}) {
        double row = 0.0;
        for (int j = 0; j < m; ++j) {
            const std::array<int, 1> o{i - j};
            row += table.at(std::span<const int>(o.data(), 1));
        }
        CHECK(row > 0.0);
    }
}
