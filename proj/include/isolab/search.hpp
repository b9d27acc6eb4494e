#pragma once

// Minimising the isoperimetric ratio over n-parameter shape classes and
// tracing level sets Q(x) = k, whose curves are homogeneous subfamilies.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isolab/families.hpp"
#include "isolab/kernels.hpp"

namespace isolab {

/// Q(x) = A(x)^d / V(x)^(d-1).
double class_ratio(const NParamFamilySpec& cls, std::span<const double> x);

struct BoundaryLimit
{
    std::size_t coordinate;  ///< 0-based
    bool lower;              ///< true: x_j -> lo, false: x_j -> hi
};

struct KminResult
{
    std::string class_id;
    int dimension = 0;
    double kmin = 0.0;
    /// Best point found, in the class's own coordinates.
    std::vector<double> argmin;
    bool attained = true;
    /// Coordinates whose minimising sequence runs into the box boundary.
    std::vector<BoundaryLimit> boundary;
    std::size_t multistart_count = 0;
    std::size_t evaluations = 0;
    double floor = 0.0;  ///< d^d kappa_d
};

/// Multistart Nelder-Mead on Latin-hypercube starts. Classes declaring a
/// homogeneous prefix are first reduced (z1 = 1) so scale is not a free
/// direction. Infima reached only at the box boundary are reported with
/// attained = false.
KminResult kmin(const NParamFamilySpec& cls, std::size_t starts, double tol, std::uint64_t seed = 0,
                Exec exec = Exec::parallel);

struct KminRow
{
    std::string class_id;
    std::string label;
    double analytic = 0.0;
    double computed = 0.0;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool attained = true;
    bool expected_attained = true;
    bool ok = false;
    std::string error;  ///< optimizer failure, if any
};

/// Every shape class of the isoperimetric table (triangles, right triangles,
/// n-gons for n = 3..12, boxes, cylinders, cones, square pyramids, ring tori)
/// against its analytic infimum.
std::vector<KminRow> kmin_table(std::size_t starts = 8, std::uint64_t seed = 0, Exec exec = Exec::parallel);

/// Point of the class as a function of the curve parameter; entry j is
/// ignored and overwritten by the solver.
using CurveMap = std::function<std::vector<double>(double)>;

/// All roots of Q(x) = k in coordinate j with the other coordinates fixed,
/// ascending. Scans F_j for sign changes and tangential dips, then bisects.
std::vector<double> coordinate_roots(const NParamFamilySpec& cls, double k, std::vector<double> x, std::size_t j);

/// The root nearest `previous` (or the smallest root when none is given).
/// Throws DomainError naming the scanned bracket when no root exists.
double solve_coordinate(const NParamFamilySpec& cls, double k, const CurveMap& fixed, std::size_t j, double s,
                        std::optional<double> previous = std::nullopt);

/// Largest open range of s inside `search` on which solve_coordinate has a
/// root, ends refined by bisection to `tol`.
Interval feasible_interval(const NParamFamilySpec& cls, double k, const CurveMap& fixed, std::size_t j,
                           Interval search, double tol = 1e-12);

struct LevelSetPoint
{
    double s;  ///< arclength from the start
    std::vector<double> x;
    std::vector<double> tangent;
    double q;
    double residual;  ///< |Q - k| / k
};

struct LevelSetCurve
{
    std::string class_id;
    double k = 0.0;
    std::vector<LevelSetPoint> points;
    std::string stop_reason;
    double max_residual() const noexcept;
};

struct TraceOptions
{
    double start_tol = 1e-6;      ///< required |Q(x_start) - k| / k
    double corrector_tol = 1e-12; ///< target |Q - k| / k after correction
    int max_corrector_iters = 25;
    double min_step = 1e-6;
    double max_step = 1e-1;
    /// Initial predictor direction; projected onto the tangent space. Defaults
    /// to the first coordinate axis.
    std::vector<double> direction;
};

/// Predictor-corrector continuation along Q(x) = k.
LevelSetCurve trace_level_set(const NParamFamilySpec& cls, double k, std::vector<double> x_start, int steps,
                              double step_size, const TraceOptions& options = {});

/// The traced curve as a one-parameter family in arclength. Between nodes x
/// is Hermite-interpolated and pulled back onto the level set.
FamilySpec curve_as_family(const NParamFamilySpec& cls, const LevelSetCurve& curve);

/// Checks the declared prefix m by sampling V(t x') = t^d V(x),
/// A(t x') = t^(d-1) A(x) and returns the class in z-coordinates
/// (z_i = x_i / x_1 for 2 <= i <= m, z_i = x_i otherwise; z_1 = 1 dropped).
NParamFamilySpec reduce_homogeneous_prefix(const NParamFamilySpec& cls, std::uint64_t seed = 0);

/// x -> (z_2, ..., z_n) for a prefix of length m.
std::vector<double> reduce_point(std::span<const double> x, int m);

/// Roots of Q(z) = k for a one-coordinate class, scanned on `window`
/// (finite ends included).
std::vector<double> scan_level_roots(const NParamFamilySpec& cls, double k, Interval window,
                                     std::size_t samples = 4096);

}  // namespace isolab
