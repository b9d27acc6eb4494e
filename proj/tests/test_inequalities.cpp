#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isolab/error.hpp"
#include "isolab/families.hpp"
#include "isolab/homogeneity.hpp"
#include "isolab/inequalities.hpp"
#include "isolab/polytope.hpp"

using namespace isolab;
using std::numbers::pi;

TEST_CASE("unit-ball volumes")
{
    CHECK(std::abs(kappa(2) - pi) <= 1e-15);
    CHECK(std::abs(kappa(3) - 4.0 * pi / 3.0) <= 1e-14);
    CHECK(std::abs(kappa(4) - pi * pi / 2.0) <= 1e-14);
    CHECK(std::abs(kappa(1) - 2.0) <= 1e-15);
    CHECK_THROWS_AS(kappa(0), DomainError);
}

TEST_CASE("balls are equality cases")
{
    for (int d = 2; d <= 7; ++d) {
        const double r = 1.3;
        const double V = kappa(d) * std::pow(r, d);
        const double A = d * kappa(d) * std::pow(r, d - 1);
        auto rep = bonnesen_general(d, V, A);
        CHECK(std::abs(rep.r - r) <= 1e-12 * r);
        CHECK(std::abs(rep.deficit) <= 1e-12 * std::pow(A, d));
        for (const auto& row : rep.rows) {
            CHECK_MESSAGE(row.holds, row.name);
            CHECK(std::abs(row.slack) <= 1e-12 * row.scale);
        }
        CHECK(rep.rows[0].scale == doctest::Approx(std::pow(A, d)));
    }
}

TEST_CASE("box with edges 2, 1, 1")
{
    auto rep = bonnesen_general(3, 2.0, 10.0);
    CHECK(rep.r == doctest::Approx(0.6));
    CHECK(rep.all_hold());
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[2].slack == doctest::Approx(2.190).epsilon(1e-3));
    CHECK(rep.deficit_identity_residual <= 1e-9);
}

TEST_CASE("plane forms")
{
    // 2 x 1 rectangle with its inscribed circle of radius 1/2.
    auto rep = bonnesen_2d(6.0, 2.0, 0.5);
    CHECK(rep.all_hold());
    CHECK(rep.deficit == doctest::Approx(36.0 - 8.0 * pi));
    CHECK(rep.rows[0].rhs == doctest::Approx((6.0 - pi) * (6.0 - pi)));
    CHECK(rep.rows[2].lhs == doctest::Approx(3.0));

    auto disk = bonnesen_2d(2 * pi, pi, 1.0);
    for (const auto& row : disk.rows)
        CHECK(std::abs(row.slack) <= 1e-12 * row.scale);

    CHECK_THROWS_AS(bonnesen_2d(6.0, 2.0, 2.0), DomainError);
    CHECK_THROWS_AS(bonnesen_2d(6.0, 2.0, 0.0), DomainError);
    CHECK_THROWS_AS(bonnesen_2d(-6.0, 2.0, 0.5), DomainError);
}

TEST_CASE("deficits")
{
    CHECK(deficit(2, 1.0, 4.0) == doctest::Approx(16.0 - 4.0 * pi));
    CHECK(deficit(3, 1.0, 6.0) == doctest::Approx(216.0 - 36.0 * pi));
    CHECK(std::abs(deficit(2, pi, 2 * pi)) <= 1e-12);
    CHECK_THROWS_AS(deficit(1, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(deficit(3, 0.0, 1.0), DomainError);
}

TEST_CASE("with the Tong radius the plane bound is the squared deficit over P^2")
{
    for (auto [P, A] : {std::pair{6.0, 2.0}, std::pair{4.0, 1.0}, std::pair{10.0, 0.5}}) {
        const double r = 2 * A / P;
        auto rep = bonnesen_2d(P, A, r);
        const double D = P * P - 4 * pi * A;
        CHECK(rep.rows[0].rhs == doctest::Approx(D * D / (P * P)).epsilon(1e-12));
        CHECK(rep.rows[0].rhs <= D);
    }
}

TEST_CASE("scaling")
{
    const double t = 2.5;
    for (int d = 2; d <= 4; ++d) {
        auto a = bonnesen_general(d, 1.0, 7.0);
        auto b = bonnesen_general(d, std::pow(t, d), 7.0 * std::pow(t, d - 1));
        CHECK(b.r == doctest::Approx(t * a.r));
        CHECK(b.deficit == doctest::Approx(std::pow(t, d * (d - 1)) * a.deficit).epsilon(1e-12));
        for (std::size_t i = 0; i < a.rows.size(); ++i)
            CHECK(a.rows[i].holds == b.rows[i].holds);
    }
}

TEST_CASE("every sampled region satisfies the bounds")
{
    auto reg = FamilyRegistry::with_builtins();
    for (const auto& id : reg.ids()) {
        const auto& fam = reg.get(id);
        for (double s : interior_samples(fam.domain, 12)) {
            auto m = fam.eval(s);
            auto rep = bonnesen_general(fam.dimension, m.volume, m.area);
            CHECK_MESSAGE(rep.deficit >= -1e-12 * std::pow(m.area, fam.dimension), id);
            CHECK_MESSAGE(rep.all_hold(), id << " at s = " << s);
            CHECK_MESSAGE(rep.deficit_identity_residual <= 1e-9, id);
        }
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto hull = random_convex_polytope(seed);
        auto dec = decompose(from_hull(hull, random_interior_point(hull.vertices, seed)));
        auto rep = bonnesen_general(3, dec.volume, dec.area);
        CHECK(rep.all_hold());
        CHECK(rep.deficit > 0.0);
        CHECK(rep.deficit_identity_residual <= 1e-9);
    }
}
