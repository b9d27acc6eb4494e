#pragma once

#include <cstddef>
#include <functional>

namespace isolab {

struct QuadratureOptions
{
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_panels = 1'000'000;
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
};

/// One 15-point Gauss-Kronrod panel on [a, b]. `error` is |K15 - G7|.
/// Nodes are strictly interior, so f is never evaluated at a or b.
QuadratureResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive Gauss-Kronrod: bisects the panel with the largest error
/// until the summed estimate is below max(abs_tol, rel_tol * |value|).
/// Throws ConvergenceError past max_panels or on a non-finite integrand.
/// Panel order is fixed, so results are bitwise reproducible.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace isolab
