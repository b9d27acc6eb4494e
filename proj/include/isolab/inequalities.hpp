#pragma once

// Isoperimetric deficit and Bonnesen-type lower bounds with the Tong inradius.

#include <string>
#include <vector>

namespace isolab {

/// Volume of the unit ball in R^d, pi^(d/2) / Gamma(d/2 + 1), via lgamma.
double kappa(int d);

/// A^d - d^d kappa_d V^(d-1). For d = 2 this is P^2 - 4 pi A.
double deficit(int d, double volume, double area);

struct InequalityRow
{
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double slack = 0.0;  ///< lhs - rhs
    double scale = 1.0;  ///< magnitude the 1e-12 tolerance is relative to
};

struct InequalityReport
{
    int dimension = 0;
    double volume = 0.0;
    double area = 0.0;
    double r = 0.0;  ///< Tong inradius (general form) or the caller's inscribed radius (2D form)
    double kappa_d = 0.0;
    double deficit = 0.0;
    std::vector<InequalityRow> rows;
    /// Relative residual of (A - d kappa r^(d-1))^d A^(d(d-1)) = deficit^d.
    /// Only set by bonnesen_general.
    double deficit_identity_residual = 0.0;

    bool all_hold() const noexcept;
};

/// Rows for A^d - d^d k V^(d-1) >= (A - d k r^(d-1))^d,
///          A^d - d^d k V^(d-1) >= (V/r - k r^(d-1))^d,
///          r A >= V + (d-1) k r^d,  with r = d V / A.
InequalityReport bonnesen_general(int d, double volume, double area);

/// Classical plane rows P^2 - 4 pi A >= (P - 2 pi r)^2,
/// P^2 - 4 pi A >= (A/r - pi r)^2 and r P >= A + pi r^2 for a caller-supplied
/// inscribed radius r <= P / (2 pi).
InequalityReport bonnesen_2d(double perimeter, double area, double r);

/// lhs >= rhs - 1e-12 * max(|lhs|, |rhs|, scale). Rows built on the deficit
/// pass scale = A^d, the size of the terms that cancel in it.
bool holds_with_tolerance(double lhs, double rhs, double scale = 1.0) noexcept;

}  // namespace isolab
