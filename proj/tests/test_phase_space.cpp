#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wignerlab/states.hpp"
#include "wignerlab/wigner_field.hpp"

using namespace wigner;

namespace {

constexpr double kPi = std::numbers::pi;

WignerFieldd field_from(const PhaseGridd& g, double (*f)(double, double)) {
    WignerFieldd out{g, WignerFieldd::Array(g.nx(), g.ny())};
    for (Eigen::Index j = 0; j < g.ny(); ++j)
        for (Eigen::Index i = 0; i < g.nx(); ++i) out.values(i, j) = f(g.x(i), g.y(j));
    return out;
}

// Simpson quadrature of f on [a, b] with an even panel count.
template <typename F>
double simpson(F f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("PhaseGrid invariants and derived values") {
    PhaseGridd g(-6, 6, -3, 3, 241, 61);
    CHECK(g.hx() == doctest::Approx(12.0 / 240).epsilon(1e-14));
    CHECK(g.hy() == doctest::Approx(6.0 / 60).epsilon(1e-14));
    CHECK(g.x(0) == -6);
    CHECK(g.x(240) == doctest::Approx(6.0));
    CHECK(g.xs().size() == 241);
    CHECK(g.cell_area() == doctest::Approx(g.hx() * g.hy()));

    CHECK_THROWS_AS(PhaseGridd(-1, 1, -1, 1, 15, 32), std::invalid_argument);
    CHECK_THROWS_AS(PhaseGridd(-1, 1, -1, 1, 32, 15), std::invalid_argument);
    CHECK_THROWS_AS(PhaseGridd(1, -1, -1, 1, 32, 32), std::invalid_argument);
    CHECK_THROWS_AS(PhaseGridd(-1, 1, 2, 2, 32, 32), std::invalid_argument);
}

TEST_CASE("integrate: vacuum normalization") {
    auto g = PhaseGridd::centered_square(6, 256);
    auto f = build_field(StateSpecd::vacuum(), g);
    CHECK(integrate(f) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("integrate: zero field") {
    auto g = PhaseGridd::centered_square(4, 32);
    WignerFieldd f{g, WignerFieldd::Array::Zero(32, 32)};
    CHECK(integrate(f) == 0.0);
}

TEST_CASE("integrate: Fock |3> against the radial quadrature oracle") {
    // Independent 1-D oracle: integral of W_3 over the plane in polar form,
    // 2 pi r W_3(r) dr with W_3 radially symmetric.
    const double oracle = simpson(
        [](double r) { return 2 * kPi * r * fock_wigner(3, r, 0.0); }, 0.0, 7.0, 4000);
    CHECK(oracle == doctest::Approx(1.0).epsilon(1e-9));

    auto g = PhaseGridd::centered_square(7, 512);
    auto f = build_field(StateSpecd::fock(3), g);
    CHECK(integrate(f) == doctest::Approx(oracle).epsilon(1e-3));
}

TEST_CASE("integrate: quadrature linearity") {
    auto g = PhaseGridd::centered_square(6, 128);
    auto f = build_field(StateSpecd::vacuum(), g);
    auto h = build_field(StateSpecd::fock(2), g);
    WignerFieldd mix{g, 0.7 * f.values - 1.9 * h.values};
    CHECK(integrate(mix) ==
          doctest::Approx(0.7 * integrate(f) - 1.9 * integrate(h)).epsilon(1e-12));
}

TEST_CASE("laplacian: vacuum Gaussian matches the analytic form") {
    // Analytic: lap W = (4x^2 + 4y^2 - 4) W. Odd point count puts a node at
    // the origin, where lap W = -4/pi.
    auto g = PhaseGridd::centered_square(6, 513);
    auto f = build_field(StateSpecd::vacuum(), g);
    auto lap = laplacian(f);
    const Eigen::Index mid = 256;
    CHECK(g.x(mid) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(lap.values(mid, mid) == doctest::Approx(-4 / kPi).epsilon(1e-3));

    double max_err = 0;
    for (Eigen::Index j = 0; j < g.ny(); ++j)
        for (Eigen::Index i = 0; i < g.nx(); ++i) {
            const double x = g.x(i), y = g.y(j);
            const double exact = (4 * x * x + 4 * y * y - 4) * vacuum_wigner(x, y);
            max_err = std::max(max_err, std::abs(lap.values(i, j) - exact));
        }
    CHECK(max_err < 1e-3);
}

TEST_CASE("laplacian: constant field and quadratic field") {
    auto g = PhaseGridd::centered_square(3, 64);
    WignerFieldd c{g, WignerFieldd::Array::Constant(64, 64, 0.7)};
    CHECK(laplacian(c).values.abs().maxCoeff() < 1e-9);

    auto q = field_from(g, [](double x, double y) { return x * x + y * y; });
    auto lap = laplacian(q);
    // Exact for quadratics, one-sided boundary stencils included.
    CHECK((lap.values - 4.0).abs().maxCoeff() < 1e-6);
}

TEST_CASE("laplacian: O(h^2) interior convergence") {
    auto err_at = [](Eigen::Index n) {
        auto g = PhaseGridd::centered_square(6, n);
        auto lap = laplacian(build_field(StateSpecd::vacuum(), g));
        double max_err = 0;
        for (Eigen::Index j = 1; j < g.ny() - 1; ++j)
            for (Eigen::Index i = 1; i < g.nx() - 1; ++i) {
                const double x = g.x(i), y = g.y(j);
                const double exact = (4 * x * x + 4 * y * y - 4) * vacuum_wigner(x, y);
                max_err = std::max(max_err, std::abs(lap.values(i, j) - exact));
            }
        return max_err;
    };
    const double coarse = err_at(129);
    const double fine = err_at(257);  // halves h
    CHECK(coarse / fine >= 3.5);
}

TEST_CASE("laplacian: divergence identity") {
    // The field decays far below 1e-12 at the boundary, so the Laplacian
    // integrates to (numerically) zero.
    auto g = PhaseGridd::centered_square(8, 512);
    auto f = build_field(StateSpecd::fock(2), g);
    CHECK(std::abs(integrate(laplacian(f))) < 1e-3);
}

TEST_CASE("convolve_gaussian: identity, moments, and mass") {
    auto g = PhaseGridd::centered_square(6, 513);
    auto f = build_field(StateSpecd::vacuum(), g);

    auto same = convolve_gaussian(f, 0.0);
    CHECK((same.values - f.values).abs().maxCoeff() == 0.0);
    CHECK_FALSE(same.blur_skipped);

    // Vacuum has per-axis variance 1/2; blurring with sigma^2 = 1/4 gives
    // variance 3/4 and peak (1/pi) * (2/3).
    auto blurred = convolve_gaussian(f, 0.5);
    const Eigen::Index mid = 256;
    CHECK(blurred.values(mid, mid) == doctest::Approx((2.0 / 3.0) / kPi).epsilon(1e-3));
    CHECK(integrate(blurred) == doctest::Approx(integrate(f)).epsilon(1e-6));

    CHECK_THROWS_AS(convolve_gaussian(f, -0.1), std::invalid_argument);
}

TEST_CASE("convolve_gaussian: sub-grid blur is skipped and flagged") {
    auto g = PhaseGridd::centered_square(6, 128);
    auto f = build_field(StateSpecd::vacuum(), g);
    auto out = convolve_gaussian(f, g.hx() / 4);
    CHECK(out.blur_skipped);
    CHECK((out.values - f.values).abs().maxCoeff() == 0.0);
}

TEST_CASE("convolve_gaussian: kernel wider than the grid is an error") {
    auto g = PhaseGridd::centered_square(6, 128);
    auto f = build_field(StateSpecd::vacuum(), g);
    CHECK_THROWS_AS(convolve_gaussian(f, 1.5), KernelExceedsGrid);
}

TEST_CASE("convolve_gaussian: semigroup") {
    auto g = PhaseGridd::centered_square(8, 512);
    auto f = build_field(StateSpecd::fock(1), g);
    auto twice = convolve_gaussian(convolve_gaussian(f, 0.3), 0.4);
    auto once = convolve_gaussian(f, 0.5);
    CHECK((twice.values - once.values).abs().maxCoeff() < 1e-4);
}

TEST_CASE("resample_scaled: identity, change of variables, normalization") {
    auto g = PhaseGridd::centered_square(6, 256);
    auto direct = build_field(StateSpecd::vacuum(), g);
    auto unit = resample_scaled(StateSpecd::vacuum(), g, 1.0);
    CHECK((unit.values - direct.values).abs().maxCoeff() == 0.0);

    auto wide = PhaseGridd::centered_square(12, 513);
    auto scaled = resample_scaled(StateSpecd::vacuum(), wide, 2.0);
    CHECK(integrate(scaled) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(scaled.values((wide.nx() - 1) / 2, (wide.ny() - 1) / 2) ==
          doctest::Approx(vacuum_wigner(0.0, 0.0) / 4).epsilon(1e-6));

    auto f1 = resample_scaled(StateSpecd::fock(1), PhaseGridd::centered_square(7, 512),
                              std::sqrt(0.9));
    CHECK(integrate(f1) == doctest::Approx(1.0).epsilon(1e-3));

    CHECK_THROWS_AS(resample_scaled(StateSpecd::vacuum(), g, 0.0), std::invalid_argument);
}

TEST_CASE("bilinear_sample: nodes, interior, outside") {
    auto g = PhaseGridd::centered_square(2, 17);
    auto f = field_from(g, [](double x, double y) { return 1 + 2 * x + 3 * y; });
    CHECK(bilinear_sample(f, g.x(4), g.y(7)) == doctest::Approx(f.values(4, 7)).epsilon(1e-14));
    // Bilinear is exact on affine functions.
    CHECK(bilinear_sample(f, 0.37, -0.81) == doctest::Approx(1 + 2 * 0.37 - 3 * 0.81).epsilon(1e-12));
    CHECK(bilinear_sample(f, 5.0, 0.0) == 0.0);
}

TEST_CASE("float instantiation") {
    auto g = PhaseGridf::centered_square(6.0f, 128);
    auto f = build_field(StateSpec<float>::vacuum(), g);
    CHECK(integrate(f) == doctest::Approx(1.0f).epsilon(1e-3));
    CHECK(std::abs(laplacian(f).values(64, 64)) < 5.0f);
}
