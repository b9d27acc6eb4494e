// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "isolab/calculus.hpp"
#include "isolab/homogeneity.hpp"
#include "isolab/inequalities.hpp"
#include "isolab/polytope.hpp"
#include "isolab/search.hpp"

using namespace isolab;
using std::numbers::pi;

namespace {

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

Outcome kmin_table_fast()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    auto rows = kmin_table();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& r : rows)
        o.require(r.ok, r.label + ": computed " + fmt(r.computed) + " vs " + fmt(r.analytic));
    o.require(rows.size() == 17, "expected 17 rows");
    o.require(secs < 30.0, "took " + fmt(secs) + " s");
    if (o.pass)
        o.detail = std::to_string(rows.size()) + " rows in " + fmt(secs) + " s";
    return o;
}

Outcome derivative_relation_everywhere()
{
    Outcome o;
    auto reg = FamilyRegistry::with_builtins();
    double worst = 0.0;
    for (const auto& id : reg.ids()) {
        const auto& fam = reg.get(id);
        auto grid = interior_samples(fam.domain, 32);
        auto curve = tong_anchored_inradius(fam, grid.front(), grid);
        auto rep = verify_derivative_relation(fam, curve, 1e-6);
        worst = std::max(worst, rep.max_rel_deviation);
        o.require(rep.passed, id + ": deviation " + fmt(rep.max_rel_deviation));
    }
    if (o.pass)
        o.detail = std::to_string(reg.ids().size()) + " families, worst " + fmt(worst);
    return o;
}

Outcome hexagon_constant()
{
    Outcome o;
    auto rep = classify(builtin_family("hexagon_120"), linspace(0.1, 10.0, 64), 1e-9);
    o.require(rep.verdict == Verdict::homogeneous, "not classified homogeneous");
    const double err = std::abs(rep.k_constant - 32.0 / std::sqrt(3.0));
    o.require(err <= 1e-9, "k off by " + fmt(err));
    if (o.pass)
        o.detail = "k error " + fmt(err);
    return o;
}

Outcome parallelogram_curve()
{
    Outcome o;
    auto cls = builtin_class("parallelogram3");
    CurveMap map = [](double s) { return std::vector<double>{std::sqrt(s), s - std::sqrt(s), 0.0}; };
    const double lo = 24.0 - 16.0 * std::sqrt(2.0), hi = 24.0 + 16.0 * std::sqrt(2.0);
    auto E = feasible_interval(cls, 32.0, map, 2, {1.0 + 1e-9, 100.0});
    o.require(std::abs(E.lo - lo) <= 1e-9 && std::abs(E.hi - hi) <= 1e-9,
              "feasible interval (" + fmt(E.lo) + ", " + fmt(E.hi) + ")");
    double worst = 0.0;
    std::optional<double> prev;
    for (double s : interior_samples({lo, hi}, 200)) {
        const double x3 = solve_coordinate(cls, 32.0, map, 2, s, prev);
        prev = x3;
        const double expect = std::asin((s / 8.0) / (std::sqrt(s) - 1.0));
        worst = std::max(worst, std::abs(x3 - expect));
        auto x = map(s);
        x[2] = x3;
        auto m = cls.eval(x);
        o.require(rel(m.volume, s * s / 8.0) <= 1e-9, "A != s^2/8 at s = " + fmt(s));
        o.require(rel(m.area, 2.0 * s) <= 1e-9, "P != 2s at s = " + fmt(s));
    }
    o.require(worst <= 1e-9, "x3 error " + fmt(worst));
    if (o.pass)
        o.detail = "x3 error " + fmt(worst);
    return o;
}

Outcome cube_inradius()
{
    Outcome o;
    auto cube = builtin_family("cube");
    auto grid = linspace(0.25, 8.0, 32);
    auto curve = inradius_by_quadrature(cube, 0.0, 0.0, grid);
    for (const auto& p : curve.samples) {
        o.require(std::abs(p.r - p.s / 2.0) <= 1e-8, "r(" + fmt(p.s) + ") = " + fmt(p.r));
        auto m = cube.eval(p.s);
        o.require(rel(m.volume, 8.0 * p.r * p.r * p.r) <= 1e-6, "V != 8 r^3");
        o.require(rel(m.area, 24.0 * p.r * p.r) <= 1e-6, "A != 24 r^2");
    }
    return o;
}

Outcome polytope_means()
{
    Outcome o;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto hull = random_convex_polytope(seed);
        double tong[2];
        for (int k = 0; k < 2; ++k) {
            auto dec = decompose(from_hull(hull, random_interior_point(hull.vertices, 1000 * seed + k)));
            auto m = mean_altitudes(dec, 3);
            const double t = 3.0 * dec.volume / dec.area;
            worst = std::max({worst, rel(m.arithmetic, t), rel(m.harmonic, t)});
            tong[k] = t;
        }
        o.require(rel(tong[0], tong[1]) <= 1e-9, "apex dependence at seed " + std::to_string(seed));
    }
    o.require(worst <= 1e-9, "worst mean deviation " + fmt(worst));
    if (o.pass)
        o.detail = "worst " + fmt(worst);
    return o;
}

Outcome support_and_cohen()
{
    Outcome o;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto hull = random_convex_polytope(seed);
        auto p = from_hull(hull, random_interior_point(hull.vertices, seed));
        o.require(rel(volume_from_support(p), decompose(p).volume) <= 1e-9, "seed " + std::to_string(seed));
    }
    const double c = cohen_check(box(2, 2, 2, {-1, -1, -1}), {0, 0, 0}, 1.0);
    const double t = cohen_check(regular_tetrahedron(1.0), {0, 0, 0}, 1.0 / (2.0 * std::sqrt(6.0)));
    o.require(c <= 1e-12, "cube residual " + fmt(c));
    o.require(t <= 1e-12, "tetrahedron residual " + fmt(t));
    if (o.pass)
        o.detail = "cube " + fmt(c) + ", tetrahedron " + fmt(t);
    return o;
}

Outcome cylinder_lift()
{
    Outcome o;
    auto disk = builtin_family("ball", {{"d", 2.0}});
    auto square = make_family("square", 2, {0.0, kInf}, [](double s) { return s * s; }, [](double s) { return 4.0 * s; });
    auto a = lift_cylinder(disk, [](double s) { return s; });
    auto b = lift_cylinder(disk, [](double s) { return 2.0 * s; });
    auto c = lift_cylinder(square, [](double s) { return s / 2.0; });
    for (double s : linspace(0.1, 10.0, 25)) {
        auto ma = a.eval(s), mb = b.eval(s), mc = c.eval(s);
        o.require(rel(3.0 * ma.volume / ma.area, s) <= 1e-10, "rho = s");
        o.require(rel(3.0 * mb.volume / mb.area, 6.0 * s / 5.0) <= 1e-10, "rho = 2s");
        o.require(rel(mc.volume, s * s * s) <= 1e-10 && rel(mc.area, 6.0 * s * s) <= 1e-10, "cube");
    }
    return o;
}

Outcome bonnesen_rows()
{
    Outcome o;
    auto reg = FamilyRegistry::with_builtins();
    double worst_identity = 0.0;
    auto check = [&](int d, double V, double A, const std::string& what) {
        auto rep = bonnesen_general(d, V, A);
        o.require(rep.all_hold(), what + ": a row fails");
        worst_identity = std::max(worst_identity, rep.deficit_identity_residual);
    };
    for (const auto& id : reg.ids()) {
        const auto& fam = reg.get(id);
        for (double s : interior_samples(fam.domain, 16)) {
            auto m = fam.eval(s);
            check(fam.dimension, m.volume, m.area, id);
        }
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto hull = random_convex_polytope(seed);
        auto dec = decompose(from_hull(hull, random_interior_point(hull.vertices, seed)));
        check(3, dec.volume, dec.area, "polytope " + std::to_string(seed));
    }
    for (int d = 2; d <= 6; ++d) {
        const double V = kappa(d), A = d * kappa(d);
        auto rep = bonnesen_general(d, V, A);
        for (const auto& r : rep.rows)
            o.require(std::abs(r.slack) <= 1e-12 * r.scale, "ball d = " + std::to_string(d));
    }
    o.require(worst_identity <= 1e-9, "identity residual " + fmt(worst_identity));
    if (o.pass)
        o.detail = "identity residual " + fmt(worst_identity);
    return o;
}

Outcome steiner_bodies()
{
    Outcome o;
    double worst = 0.0;
    auto check = [&](const std::function<SteinerBody(double)>& make, const std::string& what) {
        for (double s : {0.1, 1.0, 10.0}) {
            auto b = make(s);
            o.require(b.coefficient_residual == 0.0, what + ": coefficient residual " + fmt(b.coefficient_residual));
            const double fd = steiner_fd_residual(b);
            worst = std::max(worst, fd);
            o.require(fd <= 1e-8, what + ": finite-difference residual " + fmt(fd));
        }
    };
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto poly = random_convex_polygon(seed);
        check([&](double s) { return steiner_polygon(poly, s); }, "polygon " + std::to_string(seed));
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> edge(0.1, 5.0);
    for (int i = 0; i < 5; ++i) {
        const double a = edge(rng), b = edge(rng), c = edge(rng);
        check([&](double s) { return steiner_box(a, b, c, s); }, "box " + std::to_string(i));
    }
    if (o.pass)
        o.detail = "worst finite-difference residual " + fmt(worst);
    return o;
}

Outcome elasticities()
{
    Outcome o;
    auto rh = rhombus_branches(1.0)[0];
    auto rgrid = linspace(0.05, 1.4, 32);
    auto rc = inradius_by_quadrature(rh, 0.0, 0.0, rgrid);
    for (double s : rgrid)
        o.require(std::abs(elasticity(rh, rc, s) - 1.0) <= 1e-8, "rhombus at s = " + fmt(s));
    for (const auto& id : {"cube", "hexagon_120", "cone", "ring_torus", "square_pyramid"}) {
        auto fam = builtin_family(id);
        auto grid = interior_samples(fam.domain, 32);
        auto curve = tong_anchored_inradius(fam, grid.front(), grid);
        for (double s : grid)
            o.require(std::abs(elasticity(fam, curve, s) - fam.dimension) <= 1e-6, std::string(id));
    }
    return o;
}

}  // namespace

int main()
{
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"kmin table within 30 s", kmin_table_fast},
        {"dV/dr = A on every built-in family", derivative_relation_everywhere},
        {"hexagon constant 32/sqrt(3)", hexagon_constant},
        {"parallelogram level curve", parallelogram_curve},
        {"cube inradius s/2", cube_inradius},
        {"polytope mean altitudes", polytope_means},
        {"support volume and circumscribed polytopes", support_and_cohen},
        {"cylinder lifting", cylinder_lift},
        {"Bonnesen-type bounds", bonnesen_rows},
        {"Steiner parallel bodies", steiner_bodies},
        {"elasticity", elasticities},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %s%s%s\n", o.pass ? "PASS" : "FAIL", name, o.detail.empty() ? "" : " | ",
                    o.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
