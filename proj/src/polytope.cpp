#include "isolab/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "isolab/calculus.hpp"
#include "isolab/error.hpp"
#include "isolab/homogeneity.hpp"

namespace isolab {
namespace {

using std::numbers::pi;

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Point cross(const Point& a, const Point& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double length(const Point& a) { return std::sqrt(dot(a, a)); }

double diagonal(const std::vector<Point>& v)
{
    if (v.empty())
        return 0.0;
    Point lo = v[0], hi = v[0];
    for (const auto& p : v)
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    return length(sub(hi, lo));
}

struct Facet
{
    double measure;
    Point normal;  // outward unit normal
    Point anchor;  // a point of the facet hyperplane
};

// Measure and outward unit normal of facet f. Does not validate.
Facet facet_geometry(const StarPolyhedron& p, const std::vector<std::size_t>& f)
{
    if (p.dimension == 2) {
        const Point e = sub(p.vertices[f[1]], p.vertices[f[0]]);
        const double len = std::hypot(e[0], e[1]);
        return {len, {e[1] / len, -e[0] / len, 0.0}, p.vertices[f[0]]};
    }
    // Fan triangulation from the first vertex.
    Point sum{0.0, 0.0, 0.0};
    const Point& v0 = p.vertices[f[0]];
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
        const Point c = cross(sub(p.vertices[f[k]], v0), sub(p.vertices[f[k + 1]], v0));
        for (int i = 0; i < 3; ++i)
            sum[i] += c[i];
    }
    const double len = length(sum);
    return {0.5 * len, {sum[0] / len, sum[1] / len, sum[2] / len}, v0};
}

std::string facet_label(std::size_t i) { return "facet " + std::to_string(i) + ": "; }

void require_valid(const StarPolyhedron& p, bool check_apex)
{
    auto diags = validate(p, check_apex);
    if (!diags.empty()) {
        std::string msg = "invalid polyhedron (" + diags.front() + (diags.size() > 1 ? ", ..." : "") + ")";
        throw ValidationError(msg, std::move(diags));
    }
}

std::vector<std::string> convexity_problems(const StarPolyhedron& p)
{
    std::vector<std::string> out;
    const double tol = 1e-9 * diagonal(p.vertices);
    for (std::size_t i = 0; i < p.facets.size(); ++i) {
        const Facet f = facet_geometry(p, p.facets[i]);
        for (std::size_t v = 0; v < p.vertices.size(); ++v) {
            const double h = dot(sub(p.vertices[v], f.anchor), f.normal);
            if (h > tol) {
                std::ostringstream os;
                os << facet_label(i) << "vertex " << v << " lies " << h << " outside the facet hyperplane (not convex)";
                out.push_back(os.str());
                break;
            }
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> validate(const StarPolyhedron& p, bool check_apex)
{
    std::vector<std::string> out;
    if (p.dimension != 2 && p.dimension != 3) {
        out.push_back("dimension must be 2 or 3");
        return out;
    }
    if (p.vertices.size() < static_cast<std::size_t>(p.dimension + 1))
        out.push_back("too few vertices");
    if (p.facets.size() < static_cast<std::size_t>(p.dimension + 1))
        out.push_back("too few facets");
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
        const auto& x = p.vertices[v];
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || !std::isfinite(x[2]))
            out.push_back("vertex " + std::to_string(v) + " is not finite");
        else if (p.dimension == 2 && x[2] != 0.0)
            out.push_back("vertex " + std::to_string(v) + " has nonzero z in a planar polygon");
    }
    if (!out.empty())
        return out;

    const double diag = diagonal(p.vertices);
    const double plane_tol = 1e-9 * diag;
    // Each directed edge once, its reverse once: a closed, consistently
    // oriented boundary.
    std::map<std::pair<std::size_t, std::size_t>, int> edges;
    std::vector<bool> facet_ok(p.facets.size(), false);
    for (std::size_t i = 0; i < p.facets.size(); ++i) {
        const auto& f = p.facets[i];
        if (p.dimension == 2 ? f.size() != 2 : f.size() < 3) {
            out.push_back(facet_label(i) + (p.dimension == 2 ? "an edge needs exactly 2 vertices"
                                                             : "needs at least 3 vertices"));
            continue;
        }
        if (std::any_of(f.begin(), f.end(), [&](std::size_t v) { return v >= p.vertices.size(); })) {
            out.push_back(facet_label(i) + "vertex index out of range");
            continue;
        }
        if (p.dimension == 2) {
            ++edges[{f[0], f[1]}];
        } else {
            for (std::size_t k = 0; k < f.size(); ++k)
                ++edges[{f[k], f[(k + 1) % f.size()]}];
        }
        const Facet g = facet_geometry(p, f);
        const double min_measure = p.dimension == 2 ? 1e-14 * diag : 1e-14 * diag * diag;
        if (!(g.measure > min_measure)) {
            out.push_back(facet_label(i) + "zero measure");
            continue;
        }
        bool planar = true;
        if (p.dimension == 3) {
            for (std::size_t v : f) {
                const double h = std::abs(dot(sub(p.vertices[v], g.anchor), g.normal));
                if (h > plane_tol) {
                    std::ostringstream os;
                    os << facet_label(i) << "not planar: vertex " << v << " is " << h << " off the facet plane";
                    out.push_back(os.str());
                    planar = false;
                    break;
                }
            }
        }
        facet_ok[i] = planar;
    }
    if (p.dimension == 2) {
        // Every vertex starts one edge and ends one edge.
        std::map<std::size_t, std::pair<int, int>> degree;
        for (const auto& [e, count] : edges) {
            degree[e.first].first += count;
            degree[e.second].second += count;
        }
        for (const auto& [v, io] : degree) {
            if (io.first != 1 || io.second != 1) {
                out.push_back("boundary not a closed chain at vertex " + std::to_string(v));
                break;
            }
        }
        edges.clear();
    }
    for (const auto& [e, count] : edges) {
        if (count != 1 || edges.count({e.second, e.first}) == 0 || edges.at({e.second, e.first}) != 1) {
            std::ostringstream os;
            os << "boundary not closed or inconsistently oriented at edge (" << e.first << ", " << e.second << ")";
            out.push_back(os.str());
            break;
        }
    }
    if (check_apex) {
        for (std::size_t i = 0; i < p.facets.size(); ++i) {
            if (!facet_ok[i])
                continue;
            const Facet g = facet_geometry(p, p.facets[i]);
            const double r = dot(sub(g.anchor, p.apex), g.normal);
            if (!(r > 0.0)) {
                std::ostringstream os;
                os << facet_label(i) << "apex is not strictly inside (signed distance " << r << ")";
                out.push_back(os.str());
            }
        }
    }
    return out;
}

PyramidDecomposition decompose(const StarPolyhedron& p)
{
    require_valid(p, true);
    PyramidDecomposition dec;
    dec.dimension = p.dimension;
    for (const auto& f : p.facets) {
        const Facet g = facet_geometry(p, f);
        const double r = dot(sub(g.anchor, p.apex), g.normal);
        dec.facets.push_back({g.measure, r, g.measure * r / p.dimension});
        dec.area += g.measure;
        dec.volume += g.measure * r / p.dimension;
    }
    return dec;
}

PyramidDecomposition decomposition_from_records(int d, std::span<const double> areas,
                                                std::span<const double> altitudes)
{
    if (d < 2)
        throw DomainError("decomposition: dimension must be >= 2");
    if (areas.size() != altitudes.size() || areas.empty())
        throw DomainError("decomposition: need matching, nonempty facet records");
    PyramidDecomposition dec;
    dec.dimension = d;
    for (std::size_t i = 0; i < areas.size(); ++i) {
        if (!(areas[i] > 0.0) || !(altitudes[i] > 0.0))
            throw DomainError("decomposition: facet " + std::to_string(i) + " has nonpositive measure or altitude");
        const double v = areas[i] * altitudes[i] / d;
        dec.facets.push_back({areas[i], altitudes[i], v});
        dec.area += areas[i];
        dec.volume += v;
    }
    return dec;
}

MeanAltitudes mean_altitudes(const PyramidDecomposition& dec, int d)
{
    if (d != dec.dimension)
        throw DomainError("mean_altitudes: dimension does not match the decomposition");
    if (dec.facets.empty() || !(dec.area > 0.0) || !(dec.volume > 0.0))
        throw DomainError("mean_altitudes: empty decomposition");
    double arith = 0.0, inv = 0.0;
    for (const auto& f : dec.facets) {
        if (!(f.altitude > 0.0))
            throw DomainError("mean_altitudes: nonpositive altitude");
        arith += f.area / dec.area * f.altitude;
        inv += f.volume / dec.volume / f.altitude;
    }
    return {arith, 1.0 / inv, d * dec.volume / dec.area};
}

double support_function(std::span<const Point> vertices, const Point& u)
{
    if (vertices.empty())
        throw DomainError("support_function: empty vertex set");
    if (!(std::abs(length(u) - 1.0) <= 1e-12))
        throw DomainError("support_function: direction is not a unit vector");
    double h = -kInf;
    for (const auto& v : vertices)
        h = std::max(h, dot(v, u));
    return h;
}

double volume_from_support(const StarPolyhedron& p)
{
    require_valid(p, false);
    auto problems = convexity_problems(p);
    if (!problems.empty())
        throw ValidationError("volume_from_support: polytope is not convex", std::move(problems));
    double sum = 0.0;
    for (const auto& f : p.facets) {
        const Facet g = facet_geometry(p, f);
        sum += g.measure * support_function(p.vertices, g.normal);
    }
    return sum / p.dimension;
}

double cohen_check(const StarPolyhedron& p, const Point& incenter, double r)
{
    if (!(r > 0.0))
        throw DomainError("cohen_check: r must be positive");
    require_valid(p, false);
    std::vector<std::string> problems;
    const double tol = 1e-9 * std::max(1.0, r);
    double area = 0.0;
    for (std::size_t i = 0; i < p.facets.size(); ++i) {
        const Facet g = facet_geometry(p, p.facets[i]);
        const double dist = dot(sub(g.anchor, incenter), g.normal);
        if (std::abs(dist - r) > tol) {
            std::ostringstream os;
            os << facet_label(i) << "hyperplane at distance " << dist << " from the incenter, not " << r;
            problems.push_back(os.str());
        }
        area += g.measure;
    }
    if (!problems.empty())
        throw ValidationError("cohen_check: polytope does not circumscribe the sphere of radius r",
                              std::move(problems));
    const double v = volume_from_support(p);
    return std::abs(v - r / p.dimension * area) / v;
}

double symmetric_harmonic_mean(std::span<const double> x)
{
    if (x.empty())
        throw DomainError("symmetric_harmonic_mean: no arguments");
    double s = 0.0;
    for (double v : x) {
        if (!(v > 0.0))
            throw DomainError("symmetric_harmonic_mean: arguments must be positive");
        s += 1.0 / v;
    }
    return static_cast<double>(x.size()) / s;
}

FamilySpec lift_cylinder(const FamilySpec& base, ScalarFn rho, ScalarFn rho_derivative, double rtol)
{
    if (!rho)
        throw DomainError("lift_cylinder: rho is required");
    const auto grid = interior_samples(base.domain, 64);
    const auto rep = classify(base, grid, rtol, Exec::serial);
    if (rep.verdict != Verdict::homogeneous) {
        std::ostringstream os;
        os << "lift_cylinder: base family " << base.id << " is not homogeneous (relative spread of Q "
           << rep.q_rel_spread << " > " << rtol << ")";
        throw DomainError(os.str());
    }
    auto volume = [base, rho](double s) {
        const double r = rho(s);
        if (!(r > 0.0))
            throw DomainError("lift_cylinder: rho(s) must be positive");
        return 2.0 * base.volume(s) * r;
    };
    auto area = [base, rho](double s) { return 2.0 * base.volume(s) + 2.0 * base.area(s) * rho(s); };
    ScalarFn dv;
    if (base.has_exact_derivative() && rho_derivative)
        dv = [base, rho, rho_derivative](double s) {
            return 2.0 * (base.volume_derivative(s) * rho(s) + base.volume(s) * rho_derivative(s));
        };
    return make_family(base.id + "/lifted", base.dimension + 1, base.domain, volume, area, dv, base.params);
}

SteinerBody steiner_polygon(const std::vector<Point>& poly, double s)
{
    if (!(s >= 0.0) || !std::isfinite(s))
        throw DomainError("steiner: s must be a nonnegative number");
    const std::size_t n = poly.size();
    if (n < 3)
        throw DomainError("steiner: polygon needs at least 3 vertices");
    double twice_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        twice_area += a[0] * b[1] - a[1] * b[0];
    }
    const double orient = twice_area > 0.0 ? 1.0 : -1.0;
    double perimeter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        const auto& c = poly[(i + 2) % n];
        const double turn = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if (!(orient * turn > 0.0))
            throw DomainError("steiner: polygon is not strictly convex at vertex " + std::to_string((i + 1) % n));
        perimeter += std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    SteinerBody body;
    body.dimension = 2;
    body.s = s;
    body.volume_coefficients = {0.5 * std::abs(twice_area), perimeter, pi};
    // Perimeter of the parallel body: straight edges plus a full circle of arcs.
    body.area_coefficients = {perimeter, 2.0 * pi};
    const auto& v = body.volume_coefficients;
    const auto& a = body.area_coefficients;
    body.volume = v[0] + s * (v[1] + s * v[2]);
    body.area = a[0] + s * a[1];
    body.coefficient_residual = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k)
        body.coefficient_residual = std::max(body.coefficient_residual, std::abs(k * v[k] - a[k - 1]));
    return body;
}

SteinerBody steiner_box(double a, double b, double c, double s)
{
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw DomainError("steiner: box edges must be positive");
    if (!(s >= 0.0) || !std::isfinite(s))
        throw DomainError("steiner: s must be a nonnegative number");
    const double face = a * b + b * c + c * a;
    const double edges = a + b + c;
    SteinerBody body;
    body.dimension = 3;
    body.s = s;
    body.volume_coefficients = {a * b * c, 2.0 * face, pi * edges, 4.0 / 3.0 * pi};
    // Surface of the parallel body: faces, quarter-cylinders on the edges, and
    // sphere octants at the corners.
    body.area_coefficients = {2.0 * face, 2.0 * pi * edges, 4.0 * pi};
    const auto& v = body.volume_coefficients;
    const auto& ac = body.area_coefficients;
    body.volume = v[0] + s * (v[1] + s * (v[2] + s * v[3]));
    body.area = ac[0] + s * (ac[1] + s * ac[2]);
    body.coefficient_residual = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k)
        body.coefficient_residual = std::max(body.coefficient_residual, std::abs(k * v[k] - ac[k - 1]));
    return body;
}

FamilySpec steiner_family(const SteinerBody& body)
{
    auto poly = [](std::vector<double> c) {
        return [c](double s) {
            double r = 0.0;
            for (std::size_t k = c.size(); k-- > 0;)
                r = r * s + c[k];
            return r;
        };
    };
    return make_family("steiner", body.dimension, {0.0, kInf}, poly(body.volume_coefficients),
                       poly(body.area_coefficients));
}

double steiner_fd_residual(const SteinerBody& body)
{
    const auto fam = steiner_family(body);
    const double slope = derivative(fam.volume, body.s, 1.0);
    return std::abs(slope - body.area) / body.area;
}

StarPolyhedron polygon(const std::vector<Point>& ccw, const Point& apex)
{
    StarPolyhedron p;
    p.dimension = 2;
    p.vertices = ccw;
    for (std::size_t i = 0; i < ccw.size(); ++i)
        p.facets.push_back({i, (i + 1) % ccw.size()});
    p.apex = apex;
    return p;
}

StarPolyhedron regular_polygon(int n, double circumradius)
{
    if (n < 3 || !(circumradius > 0.0))
        throw DomainError("regular_polygon: need n >= 3 and a positive radius");
    std::vector<Point> v;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * pi * i / n;
        v.push_back({circumradius * std::cos(t), circumradius * std::sin(t), 0.0});
    }
    return polygon(v, {0.0, 0.0, 0.0});
}

StarPolyhedron box(double a, double b, double c, const Point& o)
{
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw DomainError("box: edges must be positive");
    StarPolyhedron p;
    p.dimension = 3;
    for (int i = 0; i < 8; ++i)
        p.vertices.push_back({o[0] + ((i & 1) ? a : 0.0), o[1] + ((i & 2) ? b : 0.0), o[2] + ((i & 4) ? c : 0.0)});
    p.facets = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    p.apex = {o[0] + 0.5 * a, o[1] + 0.5 * b, o[2] + 0.5 * c};
    return p;
}

StarPolyhedron regular_tetrahedron(double edge)
{
    if (!(edge > 0.0))
        throw DomainError("regular_tetrahedron: edge must be positive");
    const double k = edge / (2.0 * std::sqrt(2.0));
    StarPolyhedron p;
    p.dimension = 3;
    p.vertices = {{k, k, k}, {k, -k, -k}, {-k, k, -k}, {-k, -k, k}};
    p.facets = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return p;
}

StarPolyhedron from_hull(const Hull3& h, const Point& apex)
{
    StarPolyhedron p;
    p.dimension = 3;
    p.vertices = h.vertices;
    for (const auto& f : h.faces)
        p.facets.push_back({f[0], f[1], f[2]});
    p.apex = apex;
    return p;
}

StarPolyhedron rhombus(double a, double s)
{
    if (!(a > 0.0) || !(s > 0.0 && s < 2.0 * a))
        throw DomainError("rhombus: need 0 < s < 2a");
    const double t = std::sqrt(a * a - 0.25 * s * s);
    return polygon({{0.5 * s, 0.0, 0.0}, {0.0, t, 0.0}, {-0.5 * s, 0.0, 0.0}, {0.0, -t, 0.0}}, {0.0, 0.0, 0.0});
}

}  // namespace isolab
