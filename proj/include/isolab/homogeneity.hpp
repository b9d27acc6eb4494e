#pragma once

#include <span>
#include <string>
#include <vector>

#include "isolab/calculus.hpp"
#include "isolab/families.hpp"
#include "isolab/kernels.hpp"

namespace isolab {

/// Q = A^d / V^(d-1).
double isoperimetric_ratio(int d, double volume, double area);

/// r = d V / A.
double tong_inradius(int d, double volume, double area);

/// d^d kappa_d, the value of Q for the d-ball and the lower bound for every
/// region.
double isoperimetric_floor(int d);

enum class Verdict
{
    homogeneous,
    not_homogeneous
};

const char* to_string(Verdict v) noexcept;

struct HomogeneityReport
{
    std::string family_id;
    int dimension = 0;
    std::vector<double> grid;
    std::vector<double> q_values;
    double q_center = 0.0;  ///< median of q_values
    double q_min = 0.0;
    double q_rel_spread = 0.0;
    double rtol = 0.0;
    Verdict verdict = Verdict::not_homogeneous;

    /// max |r_quad - d V/A - C*| with C* the median offset.
    double criterion_i_residual = 0.0;
    double criterion_i_tolerance = 0.0;
    /// max |A^d - k V^(d-1)| / (k V^(d-1)) with k = q_center.
    double criterion_ii_residual = 0.0;
    double criterion_ii_tolerance = 0.0;
    /// Relative spread of A / phi^(d-1), phi = V^(1/d).
    double criterion_iii_residual = 0.0;
    double criterion_iii_tolerance = 0.0;
    double fitted_offset = 0.0;

    /// q_center when homogeneous, NaN otherwise.
    double k_constant = 0.0;
    double floor = 0.0;

    bool criterion_i_passed() const noexcept { return criterion_i_residual <= criterion_i_tolerance; }
    bool criterion_ii_passed() const noexcept { return criterion_ii_residual <= criterion_ii_tolerance; }
    bool criterion_iii_passed() const noexcept { return criterion_iii_residual <= criterion_iii_tolerance; }
    /// All three criteria agree with each other.
    bool criteria_agree() const noexcept;
};

/// Constancy of Q on `grid` (>= 32 points strictly inside the domain) plus
/// the three equivalent criteria as cross-checks.
HomogeneityReport classify(const FamilySpec& family, std::span<const double> grid, double rtol,
                           Exec exec = Exec::parallel, const QuadratureOptions& quad = {});

/// e = r A / V with r taken from `curve` (anchor dependent unless the family
/// is homogeneous and the curve is Tong-anchored).
double elasticity(const FamilySpec& family, const InradiusCurve& curve, double s,
                  const QuadratureOptions& quad = {});

struct ConstantAreaReport
{
    bool area_constant = false;
    double area_rel_spread = 0.0;
    /// Spread of r_quad - V/A over the grid; only computed when area_constant.
    double offset_spread = 0.0;
    double offset_tolerance = 0.0;
    bool offset_constant = false;

    explicit operator bool() const noexcept { return area_constant; }
};

/// A constant within rtol on the grid (>= 32 points); when it is, also checks
/// that r_quad - V/A is constant.
ConstantAreaReport constant_area_check(const FamilySpec& family, std::span<const double> grid, double rtol,
                                       const QuadratureOptions& quad = {});

}  // namespace isolab
