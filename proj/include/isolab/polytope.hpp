#pragma once

// Star-like polygons and polyhedra: pyramid decomposition from an interior
// apex, the weighted-mean altitude identities, support-function volume,
// circumscribing polytopes, cylinder lifting and Steiner parallel bodies.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "isolab/families.hpp"
#include "isolab/hull.hpp"

namespace isolab {

/// In 2D, z is zero and every facet is an edge [i, j] of a counter-clockwise
/// boundary. In 3D, facets are planar polygons listed counter-clockwise seen
/// from outside.
struct StarPolyhedron
{
    int dimension = 3;
    std::vector<Point> vertices;
    std::vector<std::vector<std::size_t>> facets;
    Point apex{0.0, 0.0, 0.0};
};

/// Per-facet problems; empty when the polyhedron is valid. With
/// `check_apex` false the apex is not examined.
std::vector<std::string> validate(const StarPolyhedron& p, bool check_apex = true);

struct PyramidFacet
{
    double area;      ///< facet measure A_i (edge length in 2D)
    double altitude;  ///< r_i, distance from the apex to the facet hyperplane
    double volume;    ///< V_i = A_i r_i / d
};

struct PyramidDecomposition
{
    int dimension = 3;
    std::vector<PyramidFacet> facets;
    double area = 0.0;
    double volume = 0.0;
};

/// Throws ValidationError listing every offending facet.
PyramidDecomposition decompose(const StarPolyhedron& p);

/// Abstract record form (any d >= 2) from facet measures and altitudes.
PyramidDecomposition decomposition_from_records(int d, std::span<const double> areas,
                                                std::span<const double> altitudes);

struct MeanAltitudes
{
    double arithmetic;  ///< sum (A_i / A) r_i
    double harmonic;    ///< [sum (V_i / V) / r_i]^-1
    double tong;        ///< d V / A
};

MeanAltitudes mean_altitudes(const PyramidDecomposition& dec, int d);

/// h(u) = max over vertices of <x, u>; |u| must be 1 within 1e-12.
double support_function(std::span<const Point> vertices, const Point& u);

/// (1/d) sum A_i h(u_i) over facets with outward unit normals u_i. The
/// polytope must be convex; the apex is ignored.
double volume_from_support(const StarPolyhedron& p);

/// |V - (r/d) A| / V for a polytope whose facet hyperplanes all lie at
/// distance r from `incenter` (checked within 1e-9). V comes from the
/// support-function route.
double cohen_check(const StarPolyhedron& p, const Point& incenter, double r);

/// H_n[x] = n / sum(1/x_i).
double symmetric_harmonic_mean(std::span<const double> x);

/// Lifts each region R(s) of a homogeneous (d-1)-dimensional family to the
/// right cylinder R(s) x [-rho(s), rho(s)]. Throws DomainError when `base`
/// is not classified homogeneous at `rtol`.
FamilySpec lift_cylinder(const FamilySpec& base, ScalarFn rho, ScalarFn rho_derivative = {},
                         double rtol = 1e-9);

struct SteinerBody
{
    int dimension;
    double s;
    /// V(s) = sum v_k s^k, A(s) = sum a_k s^k.
    std::vector<double> volume_coefficients;
    std::vector<double> area_coefficients;
    double volume;
    double area;
    /// max_k |k v_k - a_(k-1)|, zero when dV/ds = A(s) holds coefficientwise.
    double coefficient_residual;
};

/// Outer parallel body of a convex polygon (vertices in either orientation).
SteinerBody steiner_polygon(const std::vector<Point>& polygon, double s);

/// Outer parallel body of an a x b x c box.
SteinerBody steiner_box(double a, double b, double c, double s);

/// V(s) and A(s) of a parallel body as a one-parameter family in s > 0.
FamilySpec steiner_family(const SteinerBody& body);

/// Central-difference dV/ds compared with A(s), relative.
double steiner_fd_residual(const SteinerBody& body);

// Builders.
StarPolyhedron polygon(const std::vector<Point>& ccw_vertices, const Point& apex);
StarPolyhedron regular_polygon(int n, double circumradius);
StarPolyhedron box(double a, double b, double c, const Point& corner = {0.0, 0.0, 0.0});
StarPolyhedron regular_tetrahedron(double edge);
StarPolyhedron from_hull(const Hull3& h, const Point& apex);
/// Rhombus with side a and diagonal s along the x axis, centred at the origin.
StarPolyhedron rhombus(double a, double s);

}  // namespace isolab
