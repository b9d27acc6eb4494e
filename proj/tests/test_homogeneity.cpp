#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isolab/error.hpp"
#include "isolab/homogeneity.hpp"
#include "isolab/inequalities.hpp"

using namespace isolab;
using std::numbers::pi;

TEST_CASE("isoperimetric ratio and Tong inradius")
{
    const double rho = 1.7;
    CHECK(isoperimetric_ratio(2, pi * rho * rho, 2 * pi * rho) == doctest::Approx(4 * pi));
    CHECK(isoperimetric_ratio(3, 4.0 / 3.0 * pi * rho * rho * rho, 4 * pi * rho * rho) == doctest::Approx(36 * pi));
    CHECK(isoperimetric_ratio(3, 8.0, 24.0) == 216.0);
    CHECK(tong_inradius(3, 8.0, 24.0) == 1.0);
    CHECK(tong_inradius(2, pi, 2 * pi) == doctest::Approx(1.0));
    const double k = 0.4, s = 3.0;
    const double h = 2.0 / (1.0 / (s / 2) + 1.0 / (k * s / 2));
    CHECK(tong_inradius(2, k * s * s, 2 * s + 2 * k * s) == doctest::Approx(h));
    CHECK_THROWS_AS(isoperimetric_ratio(3, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(tong_inradius(3, 1.0, -1.0), DomainError);
    CHECK_THROWS_AS(isoperimetric_ratio(1, 1.0, 1.0), DomainError);
    CHECK(isoperimetric_floor(2) == doctest::Approx(4 * pi));
    CHECK(isoperimetric_floor(3) == doctest::Approx(36 * pi));
}

TEST_CASE("classification")
{
    auto hex = classify(builtin_family("hexagon_120"), linspace(0.1, 5.0, 64), 1e-9);
    CHECK(hex.verdict == Verdict::homogeneous);
    CHECK(std::abs(hex.k_constant - 32.0 / std::sqrt(3.0)) <= 1e-9);
    CHECK(hex.criteria_agree());
    CHECK(hex.criterion_i_passed());

    auto rect = classify(builtin_family("rect_fixed_length", {{"a", 1.0}}), linspace(0.5, 4.0, 32), 1e-8);
    CHECK(rect.verdict == Verdict::not_homogeneous);
    CHECK(std::isnan(rect.k_constant));
    CHECK(rect.criteria_agree());
    CHECK(!rect.criterion_i_passed());

    auto cube = classify(builtin_family("cube"), linspace(0.5, 4.0, 32), 1e-8);
    CHECK(cube.verdict == Verdict::homogeneous);
    CHECK(cube.k_constant == doctest::Approx(216.0).epsilon(1e-12));

    CHECK_THROWS_AS(classify(builtin_family("cube"), linspace(0.5, 4.0, 31), 1e-8), DomainError);
    CHECK_THROWS_AS(classify(builtin_family("cube"), linspace(-0.5, 4.0, 32), 1e-8), DomainError);
    CHECK_THROWS_AS(classify(builtin_family("cube"), linspace(0.5, 4.0, 32), 0.0), DomainError);
}

TEST_CASE("criteria agree on every built-in family")
{
    auto reg = FamilyRegistry::with_builtins();
    for (const auto& id : reg.ids()) {
        const auto& fam = reg.get(id);
        auto rep = classify(fam, interior_samples(fam.domain, 48), 1e-8);
        CHECK_MESSAGE(rep.criteria_agree(), id);
        CHECK_MESSAGE(rep.q_min >= isoperimetric_floor(fam.dimension) * (1 - 1e-12), id);
        if (rep.verdict == Verdict::homogeneous)
            CHECK_MESSAGE(rep.k_constant >= isoperimetric_floor(fam.dimension) * (1 - 1e-12), id);
    }
}

TEST_CASE("similar regions are homogeneous")
{
    for (auto fam : {builtin_family("cube"), builtin_family("rect_similar", {{"k", 0.25}}),
                     builtin_family("ngon", {{"n", 9.0}}), builtin_family("cone"), builtin_family("ring_torus")}) {
        auto rep = classify(fam, interior_samples(fam.domain, 40), 1e-8);
        CHECK_MESSAGE(rep.verdict == Verdict::homogeneous, fam.id);
    }
}

TEST_CASE("balls reach the floor")
{
    for (int d = 2; d <= 6; ++d) {
        auto rep = classify(builtin_family("ball", {{"d", static_cast<double>(d)}}), linspace(0.2, 3.0, 32), 1e-8);
        REQUIRE(rep.verdict == Verdict::homogeneous);
        CHECK(std::abs(rep.k_constant - isoperimetric_floor(d)) <= 1e-10 * isoperimetric_floor(d));
    }
}

TEST_CASE("elasticity")
{
    auto cube = builtin_family("cube");
    auto grid = linspace(0.5, 5.0, 20);
    auto c = inradius_by_quadrature(cube, 0.0, 0.0, grid);
    for (double s : {0.7, 2.0, 4.5})
        CHECK(std::abs(elasticity(cube, c, s) - 3.0) <= 1e-6);

    auto rh = rhombus_branches(2.0)[0];
    // r = A / (4a) is the curve anchored at s -> 0 with C = 0.
    auto cr = inradius_by_quadrature(rh, 0.0, 0.0, linspace(0.3, 2.7, 20));
    for (double s : {0.5, 1.5, 2.5})
        CHECK(std::abs(elasticity(rh, cr, s) - 1.0) <= 1e-8);

    auto hex = builtin_family("hexagon_120");
    auto ch = tong_anchored_inradius(hex, 1.0, linspace(0.2, 4.0, 20));
    for (double s : {0.3, 1.0, 3.0})
        CHECK(std::abs(elasticity(hex, ch, s) - 2.0) <= 1e-6);

    // Anchor C far below: r becomes negative.
    auto neg = inradius_by_quadrature(cube, 1.0, -10.0, grid);
    CHECK_THROWS_AS(elasticity(cube, neg, 1.0), DomainError);
}

TEST_CASE("constant area")
{
    auto rh = rhombus_branches(1.0)[0];
    auto rep = constant_area_check(rh, linspace(0.1, 1.35, 32), 1e-10);
    CHECK(static_cast<bool>(rep));
    CHECK(rep.offset_constant);
    CHECK(!constant_area_check(builtin_family("cube"), linspace(0.5, 3.0, 32), 1e-10));
    CHECK(!constant_area_check(builtin_family("rect_fixed_length", {{"a", 1.0}}), linspace(0.5, 3.0, 32), 1e-10));
    CHECK_THROWS_AS(constant_area_check(rh, linspace(0.1, 1.3, 8), 1e-10), DomainError);
}

TEST_CASE("serial and parallel classification match")
{
    auto fam = builtin_family("square_pyramid");
    auto grid = linspace(0.2, 6.0, 64);
    auto a = classify(fam, grid, 1e-8, Exec::serial);
    auto b = classify(fam, grid, 1e-8, Exec::parallel);
    CHECK(a.q_values == b.q_values);
    CHECK(a.criterion_i_residual == b.criterion_i_residual);
    CHECK(a.criterion_ii_residual == b.criterion_ii_residual);
    CHECK(a.criterion_iii_residual == b.criterion_iii_residual);
}
