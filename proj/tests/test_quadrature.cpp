#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isolab/error.hpp"
#include "isolab/quadrature.hpp"

using namespace isolab;

TEST_CASE("single Gauss-Kronrod panel is exact for polynomials")
{
    auto r = gauss_kronrod15([](double x) { return std::pow(x, 20); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 21.0).epsilon(1e-14));
    CHECK(r.error >= 0.0);
}

TEST_CASE("adaptive integration meets the tolerance")
{
    auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) <= 1e-12);
    r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(std::abs(r.value - 2.0) <= 1e-9);
    r = integrate([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(std::abs(r.value + 1.0) <= 1e-9);
    r = integrate([](double x) { return std::sin(50.0 * x); }, 0.0, std::numbers::pi);
    CHECK(std::abs(r.value) <= 1e-9);
}

TEST_CASE("reversed and empty ranges")
{
    auto f = [](double x) { return x * x; };
    CHECK(integrate(f, 1.0, 0.0).value == doctest::Approx(-1.0 / 3.0));
    CHECK(integrate(f, 2.0, 2.0).value == 0.0);
}

TEST_CASE("failures")
{
    QuadratureOptions tight;
    tight.max_panels = 4;
    tight.abs_tol = tight.rel_tol = 1e-15;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, tight), ConvergenceError);
    CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0), ConvergenceError);
}

TEST_CASE("results are reproducible")
{
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
    auto a = integrate(f, -5.0, 5.0);
    auto b = integrate(f, -5.0, 5.0);
    CHECK(a.value == b.value);
    CHECK(a.panels == b.panels);
}
