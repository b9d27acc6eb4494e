#include "isolab/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <utility>

#include "isolab/error.hpp"

namespace isolab {
namespace {

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Point cross(const Point& a, const Point& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double orient2(const Point& o, const Point& a, const Point& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Signed volume (times 6) of (a, b, c, p); positive when p is above abc.
double orient3(const Point& a, const Point& b, const Point& c, const Point& p)
{
    return dot(cross(sub(b, a), sub(c, a)), sub(p, a));
}

}  // namespace

std::vector<std::size_t> hull_2d(const std::vector<Point>& pts)
{
    const std::size_t n = pts.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return pts[a][0] < pts[b][0] || (pts[a][0] == pts[b][0] && pts[a][1] < pts[b][1]);
    });
    if (n < 3)
        return idx;
    std::vector<std::size_t> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && orient2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0.0)
            --k;
        h[k++] = idx[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0.0)
            --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1);
    return h;
}

Hull3 hull_3d(const std::vector<Point>& pts)
{
    const std::size_t n = pts.size();
    if (n < 4)
        throw DomainError("hull_3d: need at least four points");

    double scale = 0.0;
    for (const auto& p : pts)
        scale = std::max({scale, std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
    const double eps = 1e-12 * std::max(scale, 1e-300) * scale * scale;

    // Initial tetrahedron: farthest pair, then farthest from the line, then
    // from the plane.
    std::size_t i0 = 0, i1 = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (pts[i][0] < pts[i0][0])
            i0 = i;
        if (pts[i][0] > pts[i1][0])
            i1 = i;
    }
    if (i0 == i1)
        throw DomainError("hull_3d: degenerate point set");
    std::size_t i2 = n, i3 = n;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point c = cross(sub(pts[i1], pts[i0]), sub(pts[i], pts[i0]));
        const double a = dot(c, c);
        if (a > best) {
            best = a;
            i2 = i;
        }
    }
    best = 0.0;
    for (std::size_t i = 0; i < n && i2 < n; ++i) {
        const double v = std::abs(orient3(pts[i0], pts[i1], pts[i2], pts[i]));
        if (v > best) {
            best = v;
            i3 = i;
        }
    }
    if (i2 == n || i3 == n || best <= eps)
        throw DomainError("hull_3d: all points are coplanar");

    using Face = std::array<std::size_t, 3>;
    std::vector<Face> faces;
    auto add = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t inside) {
        if (orient3(pts[a], pts[b], pts[c], pts[inside]) > 0.0)
            std::swap(b, c);
        faces.push_back({a, b, c});
    };
    add(i0, i1, i2, i3);
    add(i0, i1, i3, i2);
    add(i0, i2, i3, i1);
    add(i1, i2, i3, i0);

    for (std::size_t p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3)
            continue;
        std::vector<bool> visible(faces.size());
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            const auto& F = faces[f];
            visible[f] = orient3(pts[F[0]], pts[F[1]], pts[F[2]], pts[p]) > eps;
            any = any || visible[f];
        }
        if (!any)
            continue;
        // Directed edges of visible faces whose twin is not visible form the horizon.
        std::map<std::pair<std::size_t, std::size_t>, bool> edges;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f])
                continue;
            for (int e = 0; e < 3; ++e)
                edges[{faces[f][e], faces[f][(e + 1) % 3]}] = true;
        }
        std::vector<Face> next;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (!visible[f])
                next.push_back(faces[f]);
        for (const auto& [e, _] : edges)
            if (!edges.count({e.second, e.first}))
                next.push_back({e.first, e.second, p});
        faces = std::move(next);
    }

    // Compact to the points actually used.
    std::vector<std::size_t> remap(n, n);
    Hull3 h;
    for (auto& F : faces) {
        for (auto& v : F) {
            if (remap[v] == n) {
                remap[v] = h.vertices.size();
                h.vertices.push_back(pts[v]);
            }
            v = remap[v];
        }
    }
    h.faces = std::move(faces);
    return h;
}

std::vector<Point> random_ball_points(std::size_t n, int dimension, double radius, std::uint64_t seed)
{
    if (dimension != 2 && dimension != 3)
        throw DomainError("random_ball_points: dimension must be 2 or 3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(n);
    while (pts.size() < n) {
        Point p{u(rng), u(rng), dimension == 3 ? u(rng) : 0.0};
        if (dot(p, p) < 1.0)
            pts.push_back({radius * p[0], radius * p[1], radius * p[2]});
    }
    return pts;
}

Hull3 random_convex_polytope(std::uint64_t seed, std::size_t n)
{
    if (n < 8)
        throw DomainError("random_convex_polytope: need at least 8 points");
    return hull_3d(random_ball_points(n, 3, 1.0, seed));
}

std::vector<Point> random_convex_polygon(std::uint64_t seed, std::size_t n)
{
    if (n < 8)
        throw DomainError("random_convex_polygon: need at least 8 points");
    auto pts = random_ball_points(n, 2, 1.0, seed);
    std::vector<Point> poly;
    for (std::size_t i : hull_2d(pts))
        poly.push_back(pts[i]);
    return poly;
}

Point random_interior_point(const std::vector<Point>& vertices, std::uint64_t seed)
{
    if (vertices.empty())
        throw DomainError("random_interior_point: no vertices");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(vertices.size());
    double total = 0.0;
    for (double& x : w) {
        x = ex(rng);
        total += x;
    }
    Point p{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (int k = 0; k < 3; ++k)
            p[k] += w[i] / total * vertices[i][k];
    return p;
}

}  // namespace isolab
