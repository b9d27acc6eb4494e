#pragma once

// Inradius change of variable r(s) = C + int_{s0}^{s} V'(t) / A(t) dt and the
// numerical checks around it.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "isolab/families.hpp"
#include "isolab/kernels.hpp"
#include "isolab/quadrature.hpp"

namespace isolab {

/// Central difference with one Richardson level,
/// h = cbrt(eps) * max(|s|, scale).
double derivative(const std::function<double(double)>& f, double s, double scale = 1.0);

/// Finite-difference step used by `derivative`.
double derivative_step(double s, double scale = 1.0);

struct CurveSample
{
    double s;
    double r;
};

struct InradiusCurve
{
    std::string family_id;
    double anchor_s0 = 0.0;
    double anchor_value_C = 0.0;
    std::vector<CurveSample> samples;
    double quadrature_error_estimate = 0.0;
};

/// dV/ds from the family's analytic derivative when present, otherwise by
/// `derivative`.
double volume_slope(const FamilySpec& family, double s);

/// Quadrature inradius on `grid` (strictly increasing, strictly inside the
/// domain). `s0` may sit on a finite end of the domain, which anchors the
/// curve at the one-sided limit; the integrand is only evaluated inside.
InradiusCurve inradius_by_quadrature(const FamilySpec& family, double s0, double C,
                                     std::span<const double> grid, const QuadratureOptions& options = {},
                                     Exec exec = Exec::parallel);

/// Anchor C such that r(s0) equals the Tong value d V(s0) / A(s0).
InradiusCurve tong_anchored_inradius(const FamilySpec& family, double s0, std::span<const double> grid,
                                     const QuadratureOptions& options = {}, Exec exec = Exec::parallel);

/// r at an arbitrary s in the covered range, integrating from the nearest
/// sample.
double inradius_at(const FamilySpec& family, const InradiusCurve& curve, double s,
                   const QuadratureOptions& options = {});

struct DerivativeRelationReport
{
    std::vector<double> s;
    std::vector<double> dv_dr;
    std::vector<double> area;
    std::vector<double> rel_deviation;
    double max_rel_deviation = 0.0;
    double rtol = 0.0;
    bool passed = false;
};

/// At each interior sample estimates dV/dr by Richardson differences of V and
/// of r along the curve and compares with A. Needs at least 8 interior
/// samples.
DerivativeRelationReport verify_derivative_relation(const FamilySpec& family, const InradiusCurve& curve,
                                                    double rtol, const QuadratureOptions& options = {});

/// Family with V(phi(t)), A(phi(t)) on `new_domain`. Monotonicity of phi and
/// phi(new_domain) within the original domain are checked on 257 samples.
FamilySpec reparameterize(const FamilySpec& family, const std::function<double(double)>& phi,
                          Interval new_domain, const std::function<double(double)>& phi_derivative = {});

struct MonotoneBranch
{
    Interval interval;
    int direction;  // +1 increasing, -1 decreasing
};

struct MonotonePartition
{
    std::vector<MonotoneBranch> branches;
    /// Stretches where the sampled function is constant; excluded.
    std::vector<Interval> gaps;
    std::vector<double> breakpoints;
};

/// Splits `domain` into maximal open subintervals on which the sampled `f` is
/// strictly monotone. Each turning point is refined by bisection on the sign
/// of the finite-difference slope down to width `refine_tol`.
MonotonePartition monotone_partition(const std::function<double(double)>& f, Interval domain,
                                     std::span<const double> grid, double refine_tol);

}  // namespace isolab
