#pragma once

// Parametric region families with closed-form volume and surface-area
// functions. In the plane "volume" is the enclosed area and "area" is the
// perimeter.

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace isolab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi); either end may be infinite.
struct Interval
{
    double lo = 0.0;
    double hi = kInf;

    bool contains(double s) const noexcept { return s > lo && s < hi; }
    bool bounded() const noexcept { return lo > -kInf && hi < kInf; }
    double width() const noexcept { return hi - lo; }
};

/// `n` strictly interior points of `I`, increasing. Infinite ends are
/// reached through t/(1-t) style maps so every point is finite.
std::vector<double> interior_samples(const Interval& I, std::size_t n);

/// `n` equally spaced points on the closed range [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

using Params = std::map<std::string, double>;
using ScalarFn = std::function<double(double)>;
using PointFn = std::function<double(std::span<const double>)>;

struct Measures
{
    double volume;
    double area;
};

/// One-parameter smooth family R(s), s in `domain`.
struct FamilySpec
{
    std::string id;
    int dimension = 3;
    Interval domain;
    Params params;
    ScalarFn volume;
    ScalarFn area;
    /// Analytic dV/ds when known; empty otherwise.
    ScalarFn volume_derivative;

    Measures eval(double s) const;
    bool has_exact_derivative() const noexcept { return static_cast<bool>(volume_derivative); }
};

/// n-parameter smooth family over a box of open intervals.
struct NParamFamilySpec
{
    std::string id;
    int dimension = 3;
    std::vector<Interval> domain;
    Params params;
    PointFn volume;
    PointFn area;
    /// V and A are homogeneous of degree d and d-1 in the first m coordinates.
    std::optional<int> homogeneous_prefix_m;

    std::size_t arity() const noexcept { return domain.size(); }
    bool contains(std::span<const double> x) const noexcept;
    Measures eval(std::span<const double> x) const;
};

/// User-defined family. Checks d >= 2 and lo < hi; no symbolic work is done.
FamilySpec make_family(std::string id, int dimension, Interval domain, ScalarFn volume,
                       ScalarFn area, ScalarFn volume_derivative = {}, Params params = {});

/// One-parameter families: cube, rect_fixed_length(a), rect_similar(k),
/// rhombus(a, branch), hexagon_120, ngon(n), ball(d), and the scaled solids
/// box3(a,b,c), cylinder(rho,h), cone(rho,h), square_pyramid(a,h),
/// ring_torus(rho1,rho2), triangle_sides(a,b,c), right_triangle(a,b), where s
/// multiplies every length of the given shape.
///
/// rhombus requires `branch`: 0 selects (0, sqrt(2) a), 1 selects (sqrt(2) a, 2a).
FamilySpec builtin_family(const std::string& id, const Params& params = {});

/// n-parameter classes: triangle_sides, right_triangle, ngon(n), box3,
/// cylinder, cone, square_pyramid, ring_torus, parallelogram3, rectangle2.
NParamFamilySpec builtin_class(const std::string& id, const Params& params = {});

/// Family catalog first, class catalog otherwise (so "ngon" resolves to the
/// regular n-gon family; use builtin_class for the n-gon class).
std::variant<FamilySpec, NParamFamilySpec> builtin(const std::string& id, const Params& params = {});

/// Both monotone branches of the fixed-side rhombus family.
std::array<FamilySpec, 2> rhombus_branches(double a);

std::vector<std::string> builtin_family_ids();
std::vector<std::string> builtin_class_ids();

/// Default parameters used when a catalog entry is listed without input.
Params builtin_default_params(const std::string& id);

/// Named collection of families. Populate during setup, then share read-only.
class FamilyRegistry
{
  public:
    /// Registry holding every built-in family at its default parameters
    /// (rhombus contributes both branches as rhombus_inc / rhombus_dec).
    static FamilyRegistry with_builtins();

    void add(FamilySpec family);
    bool contains(const std::string& id) const;
    const FamilySpec& get(const std::string& id) const;
    std::vector<std::string> ids() const;

  private:
    std::map<std::string, FamilySpec> families_;
};

}  // namespace isolab
