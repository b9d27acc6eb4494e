#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isolab/error.hpp"
#include "isolab/families.hpp"

using namespace isolab;
using std::numbers::pi;

namespace {

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("cube measures")
{
    auto cube = builtin_family("cube");
    CHECK(cube.dimension == 3);
    auto m = cube.eval(2.0);
    CHECK(m.volume == 8.0);
    CHECK(m.area == 24.0);
    m = cube.eval(1.0);
    CHECK(m.volume == 1.0);
    CHECK(m.area == 6.0);
}

TEST_CASE("hexagon with 120 degree angles")
{
    auto hex = builtin_family("hexagon_120");
    auto m = hex.eval(1.0);
    CHECK(m.area == doctest::Approx(12.0).epsilon(1e-15));
    CHECK(m.volume == doctest::Approx(9.0 * std::sqrt(3.0) / 2.0).epsilon(1e-15));
    for (double s : linspace(0.05, 20.0, 200)) {
        const double q = s * s + s + 1.0;
        auto v = hex.eval(s);
        CHECK(close(v.volume, std::sqrt(3.0) / 2.0 * q * q, 1e-13));
        CHECK(close(v.area, 4.0 * q, 1e-13));
    }
}

TEST_CASE("two-dimensional families")
{
    auto rs = builtin_family("rect_similar", {{"k", 0.5}});
    auto m = rs.eval(2.0);
    CHECK(m.volume == doctest::Approx(2.0));
    CHECK(m.area == doctest::Approx(6.0));

    auto rh = builtin_family("rhombus", {{"a", 1.0}, {"branch", 0.0}});
    m = rh.eval(1.0);
    CHECK(m.volume == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(m.area == 4.0);
    CHECK(rh.domain.hi == doctest::Approx(std::sqrt(2.0)));

    auto rf = builtin_family("rect_fixed_length", {{"a", 2.0}});
    m = rf.eval(3.0);
    CHECK(m.volume == 6.0);
    CHECK(m.area == 10.0);
}

TEST_CASE("solid mensuration")
{
    auto cyl = builtin_class("cylinder");
    auto m = cyl.eval(std::vector<double>{1.0, 2.0});
    CHECK(m.volume == doctest::Approx(2.0 * pi));
    CHECK(m.area == doctest::Approx(6.0 * pi));

    auto cone = builtin_class("cone");
    m = cone.eval(std::vector<double>{3.0, 4.0});
    CHECK(m.volume == doctest::Approx(12.0 * pi));
    CHECK(m.area == doctest::Approx(9.0 * pi + 15.0 * pi));

    auto pyr = builtin_class("square_pyramid");
    m = pyr.eval(std::vector<double>{2.0, 3.0});
    CHECK(m.volume == doctest::Approx(4.0));
    CHECK(m.area == doctest::Approx(4.0 + 4.0 * std::sqrt(10.0)));

    auto tri = builtin_class("triangle_sides");
    // Ravi variables (1, 2, 3) give sides 5, 4, 3.
    m = tri.eval(std::vector<double>{1.0, 2.0, 3.0});
    CHECK(m.volume == doctest::Approx(6.0));
    CHECK(m.area == doctest::Approx(12.0));

    auto par = builtin_class("parallelogram3");
    m = par.eval(std::vector<double>{2.0, 3.0, pi / 6.0});
    CHECK(m.volume == doctest::Approx(3.0));
    CHECK(m.area == doctest::Approx(10.0));

    auto torus = builtin_family("ring_torus", {{"rho1", 1.0}, {"rho2", 3.0}});
    m = torus.eval(1.0);
    CHECK(m.volume == doctest::Approx(6.0 * pi * pi));
    CHECK(m.area == doctest::Approx(12.0 * pi * pi));
}

TEST_CASE("parameter and domain errors")
{
    CHECK_THROWS_AS(builtin_family("ring_torus", {{"rho1", 1.0}, {"rho2", 1.0}}), DomainError);
    CHECK_THROWS_AS(builtin_family("rhombus", {{"a", 1.0}}), DomainError);
    CHECK_THROWS_AS(builtin_family("rect_similar", {{"k", 1.5}}), DomainError);
    CHECK_THROWS_AS(builtin_family("no_such_family"), DomainError);
    CHECK_THROWS_AS(builtin_class("no_such_class"), DomainError);
    CHECK_THROWS_AS(builtin_family("cube", {{"edge", 1.0}}), DomainError);
    auto cube = builtin_family("cube");
    CHECK_THROWS_AS(cube.eval(0.0), DomainError);
    CHECK_THROWS_AS(cube.eval(-1.0), DomainError);
    auto par = builtin_class("parallelogram3");
    CHECK_THROWS_AS(par.eval(std::vector<double>{1.0, 1.0, 4.0}), DomainError);
    CHECK_THROWS_AS(par.eval(std::vector<double>{1.0, 1.0}), DomainError);
}

TEST_CASE("scaling of similar-region families")
{
    for (auto fam : {builtin_family("cube"), builtin_family("rect_similar", {{"k", 0.3}}),
                     builtin_family("ngon", {{"n", 7.0}})}) {
        const int d = fam.dimension;
        for (double s : {0.3, 1.0, 2.5})
            for (double t : {0.5, 1.7, 3.0}) {
                auto a = fam.eval(s);
                auto b = fam.eval(t * s);
                CHECK(close(b.volume, std::pow(t, d) * a.volume, 1e-13));
                CHECK(close(b.area, std::pow(t, d - 1) * a.area, 1e-13));
            }
    }
}

TEST_CASE("volume is strictly monotone on every built-in family")
{
    auto reg = FamilyRegistry::with_builtins();
    for (const auto& id : reg.ids()) {
        const auto& fam = reg.get(id);
        auto grid = interior_samples(fam.domain, 200);
        int sign = 0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double dv = fam.eval(grid[i + 1]).volume - fam.eval(grid[i]).volume;
            const int s = dv > 0 ? 1 : (dv < 0 ? -1 : 0);
            CHECK_MESSAGE(s != 0, id);
            if (sign == 0)
                sign = s;
            CHECK_MESSAGE(s == sign, id);
        }
    }
}

TEST_CASE("analytic derivatives agree with the volume")
{
    auto reg = FamilyRegistry::with_builtins();
    for (const auto& id : reg.ids()) {
        const auto& fam = reg.get(id);
        REQUIRE_MESSAGE(fam.has_exact_derivative(), id);
        for (double s : interior_samples(fam.domain, 9)) {
            const double h = 1e-6 * std::max(1.0, std::abs(s));
            if (!fam.domain.contains(s - h) || !fam.domain.contains(s + h))
                continue;
            const double fd = (fam.volume(s + h) - fam.volume(s - h)) / (2 * h);
            CHECK_MESSAGE(std::abs(fd - fam.volume_derivative(s)) <= 1e-6 * std::max(1.0, std::abs(fd)), id);
        }
    }
}

TEST_CASE("registry")
{
    auto reg = FamilyRegistry::with_builtins();
    CHECK(reg.contains("rhombus_inc"));
    CHECK(reg.contains("rhombus_dec"));
    CHECK(reg.contains("cube"));
    CHECK_THROWS_AS(reg.get("nothing"), DomainError);
    reg.add(make_family("mine", 2, {0.0, 1.0}, [](double s) { return s; }, [](double) { return 1.0; }));
    CHECK(reg.get("mine").eval(0.5).volume == 0.5);
    CHECK_THROWS_AS(make_family("bad", 1, {0.0, 1.0}, [](double s) { return s; }, [](double) { return 1.0; }),
                    DomainError);
    CHECK_THROWS_AS(make_family("bad", 2, {1.0, 1.0}, [](double s) { return s; }, [](double) { return 1.0; }),
                    DomainError);
}

TEST_CASE("builtin resolution")
{
    auto v = builtin("ngon", {{"n", 5.0}});
    CHECK(std::holds_alternative<FamilySpec>(v));
    auto c = builtin("parallelogram3");
    REQUIRE(std::holds_alternative<NParamFamilySpec>(c));
    CHECK(std::get<NParamFamilySpec>(c).arity() == 3);
    CHECK(builtin_class("ngon", {{"n", 5.0}}).arity() == 10);
}

TEST_CASE("interior samples stay inside the interval")
{
    for (Interval I : {Interval{0.0, kInf}, Interval{-kInf, kInf}, Interval{1.0, 2.0}, Interval{-kInf, 0.0}}) {
        auto g = interior_samples(I, 50);
        REQUIRE(g.size() == 50);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(I.contains(g[i]));
            CHECK(std::isfinite(g[i]));
            if (i > 0)
                CHECK(g[i] > g[i - 1]);
        }
    }
    CHECK_THROWS_AS(interior_samples({1.0, 1.0}, 4), DomainError);
}
