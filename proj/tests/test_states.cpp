#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "wignerlab/negativity.hpp"
#include "wignerlab/states.hpp"

using namespace wigner;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("StateSpec validation") {
    CHECK_THROWS_AS(StateSpecd::coherent(-1), std::invalid_argument);
    CHECK_THROWS_AS(StateSpecd::fock(-1), std::invalid_argument);
    CHECK_THROWS_AS(StateSpecd::fock(201), OrderTooLarge);
    CHECK_THROWS_AS(StateSpecd::cat(0), std::invalid_argument);
    CHECK_THROWS_AS(StateSpecd::banana(9, 0.1), TruncationBudget);
    CHECK_THROWS_AS(StateSpecd::banana(2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(StateSpecd::fock_superposition({{0.5, 0}, {0.5, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(StateSpecd::fock_superposition({}), std::invalid_argument);

    auto b = StateSpecd::banana_r(5, 1.5);
    const auto* banana = b.get_if<StateSpecd::Banana>();
    REQUIRE(banana != nullptr);
    CHECK(banana->gamma == doctest::Approx(1.5 / 25).epsilon(1e-14));
    CHECK(banana->big_r() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(b.family_name() == "banana");
    CHECK(b.family_parameter() == 5);
}

TEST_CASE("fock_wigner values and errors") {
    CHECK(fock_wigner(0, 0.0, 0.0) == doctest::Approx(1 / kPi).epsilon(1e-14));
    CHECK(fock_wigner(1, 0.0, 0.0) == doctest::Approx(-1 / kPi).epsilon(1e-14));
    // Root of 1 - 2 r^2 at r = 1/sqrt(2).
    CHECK(std::abs(fock_wigner(1, 1 / std::numbers::sqrt2, 0.0)) < 1e-12);
    CHECK_THROWS_AS(fock_wigner(201, 0.0, 0.0), OrderTooLarge);
}

TEST_CASE("fock_wigner against the standard-library Laguerre oracle") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> draw(-3.0, 3.0);
    for (int n : {2, 5, 17, 60}) {
        for (int k = 0; k < 20; ++k) {
            const double x = draw(rng), y = draw(rng);
            const double z = 2 * (x * x + y * y);
            const double expected =
                ((n % 2) ? -1.0 : 1.0) * std::laguerre(unsigned(n), z) * std::exp(-z / 2) / kPi;
            CHECK(fock_wigner(n, x, y) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("Fock parity: W_n(0,0) = (-1)^n / pi exactly") {
    for (int n = 0; n <= 8; ++n) {
        const double expected = ((n % 2) ? -1.0 : 1.0) / kPi;
        CHECK(fock_wigner(n, 0.0, 0.0) == expected);
    }
}

TEST_CASE("cat_wigner: closed-form values") {
    // At the origin the three terms collapse to exactly 1/pi for any alpha.
    CHECK(cat_wigner(3.6, 0.0, 0.0) == doctest::Approx(1 / kPi).epsilon(1e-14));
    CHECK(cat_wigner(1.2, 0.0, 0.0) == doctest::Approx(1 / kPi).epsilon(1e-14));

    // Gaussian decay kills the fringe at large x even on a fringe crest.
    const double alpha = 2.5;
    const double y = kPi / (2 * 2 * std::numbers::sqrt2 * alpha);
    CHECK(std::abs(cat_wigner(alpha, 10.0, y)) < 1e-10);

    CHECK_THROWS_AS(cat_wigner(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("cat state: full-grid normalization and fringe negativity") {
    auto g = auto_grid(StateSpecd::cat(2));
    auto f = build_field(StateSpecd::cat(2), g);
    CHECK(integrate(f) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(negativity_volume(f).v_neg > 0.1);
}

TEST_CASE("cat state: interference-free part carries 1/(1+e^{-2 a^2}) of the mass") {
    const double alpha = 4;
    auto g = auto_grid(StateSpecd::cat(alpha));
    WignerFieldd f{g, WignerFieldd::Array(g.nx(), g.ny())};
    const double d = std::numbers::sqrt2 * alpha;
    const double norm = 1 + std::exp(-2 * alpha * alpha);
    for (Eigen::Index j = 0; j < g.ny(); ++j)
        for (Eigen::Index i = 0; i < g.nx(); ++i) {
            const double x = g.x(i), y = g.y(j);
            const double wm = std::exp(-y * y - (x + d) * (x + d)) / (2 * kPi);
            const double wp = std::exp(-y * y - (x - d) * (x - d)) / (2 * kPi);
            f.values(i, j) = (wm + wp) / norm;
        }
    CHECK(integrate(f) == doctest::Approx(1.0 / norm).epsilon(1e-3));
}

TEST_CASE("banana with zero nonlinearity is the coherent Gaussian") {
    const double alpha = 3;
    auto ev = make_evaluator(StateSpecd::banana(alpha, 0.0));
    for (double x : {-2.0, 0.0, 1.7, 4.2, 5.0})
        for (double y : {-1.3, 0.0, 0.4, 2.0}) {
            CHECK(ev(x, y) == doctest::Approx(coherent_wigner(alpha, x, y)).epsilon(1e-6));
        }
}

TEST_CASE("banana: normalization at alpha = 5, R = 1.5") {
    auto s = StateSpecd::banana_r(5, 1.5);
    auto f = build_field(s, auto_grid(s));
    CHECK(integrate(f) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(f.all_finite());
}

TEST_CASE("banana: truncation self-convergence") {
    const double alpha = 5, gamma = 1.5 / 25;
    const int n_base = banana_truncation(alpha);
    FockSumTable<double> base(detail::banana_coefficients(alpha, gamma, n_base));
    FockSumTable<double> refined(detail::banana_coefficients(alpha, gamma, n_base + 10));
    for (double x : {-6.0, -2.0, 0.0, 3.0, 7.0})
        for (double y : {-4.0, 0.0, 1.0, 6.5}) {
            CHECK(std::abs(base(x, y) - refined(x, y)) < 1e-8);
        }
}

TEST_CASE("banana: batch evaluation matches point evaluation") {
    const double alpha = 4, gamma = 1.5 / 16;
    FockSumTable<double> table(
        detail::banana_coefficients(alpha, gamma, banana_truncation(alpha)));
    const Eigen::Index n = 257;
    std::vector<double> xs(n), ys(n), out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        xs[i] = -13.0 + i * 26.0 / double(n - 1);
        ys[i] = 1.3;
    }
    table.eval_batch(xs.data(), ys.data(), n, out.data());
    for (Eigen::Index i = 0; i < n; i += 16)
        CHECK(out[i] == doctest::Approx(table(xs[i], ys[i])).epsilon(1e-10));
}

TEST_CASE("purity bound |W| <= 1/pi across families") {
    std::vector<StateSpecd> states = {StateSpecd::vacuum(), StateSpecd::coherent(2),
                                      StateSpecd::fock(5), StateSpecd::cat(3.6),
                                      StateSpecd::banana_r(3, 1.5)};
    for (const auto& s : states) {
        auto ev = make_evaluator(s);
        for (double x = -8; x <= 8; x += 0.37)
            for (double y = -8; y <= 8; y += 0.41) {
                CHECK(std::abs(ev(x, y)) <= 1 / kPi + 1e-9);
            }
    }
}

TEST_CASE("build_field: vacuum peak and Fock radial symmetry") {
    auto g = PhaseGridd::centered_square(6, 257);
    auto vac = build_field(StateSpecd::vacuum(), g);
    CHECK(vac.max_value() == doctest::Approx(1 / kPi).epsilon(1e-12));

    auto f3 = build_field(StateSpecd::fock(3), auto_grid(StateSpecd::fock(3)));
    const auto& fg = f3.grid;
    // Swapping the two indices mirrors (x, y) -> (y, x) on a square grid.
    for (Eigen::Index j = 0; j < fg.ny(); j += 37)
        for (Eigen::Index i = 0; i < fg.nx(); i += 41) {
            CHECK(f3.values(i, j) == doctest::Approx(f3.values(j, i)).epsilon(1e-12));
        }
}

TEST_CASE("global phase invariance of Fock superpositions") {
    std::vector<std::complex<double>> c = {{0.5, 0.1}, {0.2, -0.3}, {0.6, 0.0}, {0.1, 0.4}};
    double norm = 0;
    for (auto& v : c) norm += std::norm(v);
    for (auto& v : c) v /= std::sqrt(norm);
    std::vector<std::complex<double>> rotated = c;
    const std::complex<double> phase = std::polar(1.0, 1.234);
    for (auto& v : rotated) v *= phase;

    auto ev1 = make_evaluator(StateSpecd::fock_superposition(c));
    auto ev2 = make_evaluator(StateSpecd::fock_superposition(rotated));
    for (double x : {-1.5, 0.0, 0.8, 2.2})
        for (double y : {-2.0, 0.3, 1.1}) {
            CHECK(ev1(x, y) == doctest::Approx(ev2(x, y)).epsilon(1e-13));
        }
}

TEST_CASE("Fock-sum support cutoff is invisible at double precision") {
    const double alpha = 3, gamma = 1.5 / 9;
    FockSumTable<double> table(
        detail::banana_coefficients(alpha, gamma, banana_truncation(alpha)));
    const double r_cut = table.support_radius();
    // Just inside the cutoff the true value is already far below quadrature
    // resolution; outside it is clamped to zero.
    CHECK(std::abs(table(r_cut - 1e-3, 0.0)) < 1e-13);
    CHECK(table(r_cut + 1e-3, 0.0) == 0.0);
}

TEST_CASE("auto_grid sizing") {
    auto g = auto_grid(StateSpecd::fock(3));
    CHECK(g.nx() == 512);  // default floor dominates for low-order Fock states
    CHECK(g.x_max() == doctest::Approx(std::numbers::sqrt2 * std::sqrt(3.0) + 6));

    auto cat = auto_grid(StateSpecd::cat(3.6));
    CHECK(cat.x_max() == doctest::Approx(std::numbers::sqrt2 * 3.6 + 6));
    CHECK(cat.nx() > 512);  // fringe sampling outruns the floor

    auto fine = auto_grid(StateSpecd::cat(3.6), 1.2);
    CHECK(fine.x_max() == doctest::Approx((std::numbers::sqrt2 * 3.6 + 6) * std::exp(1.2)));
    CHECK(fine.nx() > cat.nx());

    GridRequest req;
    req.n_cap = 600;
    CHECK_THROWS_AS(auto_grid(StateSpecd::cat(3.6), 1.2, 0.0, req), GridResolutionExceeded);

    req = GridRequest{};
    req.extent_override = 9.0;
    auto forced = auto_grid(StateSpecd::cat(3.6), 0.0, 0.0, req);
    CHECK(forced.x_max() == 9.0);
}
