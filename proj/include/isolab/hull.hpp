#pragma once

// Convex hulls and seeded random convex bodies for property checks.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace isolab {

using Point = std::array<double, 3>;

/// Indices of the hull vertices of planar points (z ignored), counter-clockwise,
/// collinear points dropped.
std::vector<std::size_t> hull_2d(const std::vector<Point>& pts);

struct Hull3
{
    std::vector<Point> vertices;
    /// Triangles, counter-clockwise seen from outside.
    std::vector<std::array<std::size_t, 3>> faces;
};

/// Incremental hull of points in general position. Throws DomainError when
/// every point lies in a common plane.
Hull3 hull_3d(const std::vector<Point>& pts);

/// `n` points drawn uniformly from the ball of the given radius.
std::vector<Point> random_ball_points(std::size_t n, int dimension, double radius, std::uint64_t seed);

/// Hull of `n >= 8` uniform points in the unit ball.
Hull3 random_convex_polytope(std::uint64_t seed, std::size_t n = 16);

/// Counter-clockwise convex polygon: hull of `n >= 8` uniform points in the
/// unit disk.
std::vector<Point> random_convex_polygon(std::uint64_t seed, std::size_t n = 12);

/// Random convex combination of the vertices with Dirichlet(1) weights, so
/// strictly interior for a full-dimensional hull.
Point random_interior_point(const std::vector<Point>& vertices, std::uint64_t seed);

}  // namespace isolab
