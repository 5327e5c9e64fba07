#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sincvolterra/sinc_basis.hpp>

#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace sincvolterra;

TEST_CASE("sine integral matches tabulated values")
{
    // Reference values computed once with 50-digit arithmetic and frozen.
    CHECK(std::abs(sine_integral(1.0) - 0.946083070367183) < 1e-14);
    CHECK(std::abs(sine_integral(4.0) - 1.758203138949053) < 1e-14);
    CHECK(std::abs(sine_integral(10.0) - 1.658347594218874) < 1e-14);
    CHECK(std::abs(sine_integral(100.0) - 1.562225466889056) < 1e-14);
    CHECK(std::abs(sine_integral(1e4) - 1.570891545385962) < 1e-14);
    CHECK(std::abs(sine_integral(std::numbers::pi) - 1.851937051982466) < 1e-13);
    CHECK(sine_integral(0.0) == 0.0);
}

TEST_CASE("sine integral agrees with quadrature oracle on [-50, 50]")
{
    std::mt19937 gen(20240917);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double x = dist(gen);
        CHECK(std::abs(sine_integral(x) - oracles::si_quadrature(x)) <= 1e-13);
    }
}

TEST_CASE("sine integral agrees with Laplace representation for large x")
{
    for (double x : {5.0, 20.0, 100.0, 1e3, 1e4, 1e6})
        CHECK(std::abs(sine_integral(x) - oracles::si_large(x)) <= 1e-14);
}

TEST_CASE("sine integral is odd to the last bit and tends to pi/2")
{
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> dist(0.0, 200.0);
    for (int i = 0; i < 50; ++i) {
        const double x = dist(gen);
        CHECK(sine_integral(-x) == -sine_integral(x));
    }
    // Tail: |Si(x) - pi/2| <= 2/x for x >= 1.
    for (double x : {1e2, 1e4, 1e8})
        CHECK(std::abs(sine_integral(x) - std::numbers::pi / 2) <= 2.0 / x);
}

TEST_CASE("sine integral rejects non-finite input")
{
    CHECK_THROWS_AS((void)sine_integral(std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
    CHECK_THROWS_AS((void)sine_integral(std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK_THROWS_AS((void)sine_integral(-std::numeric_limits<double>::infinity()),
                    std::domain_error);
}

TEST_CASE("call counter counts every evaluation")
{
    reset_sine_integral_call_count();
    CHECK(sine_integral_call_count() == 0);
    (void)sine_integral(1.0);
    (void)sine_integral(-2.0);
    (void)sine_integral(300.0);
    CHECK(sine_integral_call_count() == 3);
    reset_sine_integral_call_count();
    CHECK(sine_integral_call_count() == 0);
}

TEST_CASE("sinc basis is cardinal on its grid")
{
    const double h = 0.7;
    for (int j = -5; j <= 5; ++j)
        for (int i = -5; i <= 5; ++i) {
            const double expected = i == j ? 1.0 : 0.0;
            CHECK(std::abs(sinc_basis(j, h, i * h) - expected) <= 1e-14);
        }
    // Exactly 1 at the center, where the small-argument branch applies.
    CHECK(sinc_basis(3, 0.25, 3 * 0.25) == 1.0);
}

TEST_CASE("sinc basis is smooth across the small-argument crossover")
{
    // Values on either side of the series/ratio switch must agree closely.
    const double h = 1.0;
    for (double x : {1e-9, 1e-8, 1.01e-8, 1e-7}) {
        const double s = sinc_basis(0, h, x);
        const double z = std::numbers::pi * x;
        CHECK(std::abs(s - (1.0 - z * z / 6.0)) <= 3e-16);
    }
}

TEST_CASE("indefinite basis interpolates the step profile")
{
    const double h = 0.4;
    // At its own node the antiderivative is exactly half the step.
    CHECK(indefinite_basis(0, h, 0.0) == 0.5 * h);
    CHECK(indefinite_basis(2, h, 2 * h) == 0.5 * h);
    // Far left: no mass yet. Far right: the full step h.
    CHECK(std::abs(indefinite_basis(0, h, -80.0)) <= h * 1e-3);
    CHECK(std::abs(indefinite_basis(0, h, 80.0) - h) <= h * 1e-3);
    // Monotone profile sampled against the quadrature oracle.
    for (double x : {-1.3, -0.2, 0.35, 2.0}) {
        const double z = std::numbers::pi * (x - h) / h;
        const double expected = h * (0.5 + oracles::si_quadrature(z) / std::numbers::pi);
        CHECK(std::abs(indefinite_basis(1, h, x) - expected) <= 1e-13);
    }
}

TEST_CASE("delta weights complement to one")
{
    CHECK(delta_weight(0) == 0.5);
    CHECK(std::abs(delta_weight(1) - 1.0894898722360835) <= 1e-15);
    // delta_k + delta_{-k} = 1; one rounding in the +1/2 shift allows 1 ulp.
    for (int k = 1; k <= 30; ++k)
        CHECK(std::abs(delta_weight(k) + delta_weight(-k) - 1.0) <= 1.2e-16);
    CHECK(delta_weight(1) + delta_weight(-1) == 1.0);
    // Large lag saturates: weight 1 ahead, 0 behind.
    CHECK(std::abs(delta_weight(200) - 1.0) <= 1e-3);
    CHECK(std::abs(delta_weight(-200)) <= 1e-3);
}

TEST_CASE("grid validation")
{
    const SincGrid<double> grid(8, 0.25);
    CHECK(grid.n() == 17);
    CHECK_THROWS_AS(SincGrid<double>(0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(SincGrid<double>(-3, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(SincGrid<double>(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SincGrid<double>(4, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(SincGrid<double>(4, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}
