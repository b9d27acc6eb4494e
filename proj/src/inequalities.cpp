#include "isolab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isolab/error.hpp"

namespace isolab {
namespace {

using std::numbers::pi;

void require_positive(double volume, double area, const char* what)
{
    if (!(volume > 0.0) || !(area > 0.0) || !std::isfinite(volume) || !std::isfinite(area))
        throw DomainError(std::string(what) + ": volume and area must be positive and finite");
}

InequalityRow row(std::string name, double lhs, double rhs, double scale = 1.0)
{
    const double sc = std::max({std::abs(lhs), std::abs(rhs), scale});
    return {std::move(name), lhs, rhs, holds_with_tolerance(lhs, rhs, sc), lhs - rhs, sc};
}

}  // namespace

double kappa(int d)
{
    if (d < 1)
        throw DomainError("kappa: dimension must be >= 1");
    return std::exp(0.5 * d * std::log(pi) - std::lgamma(0.5 * d + 1.0));
}

double deficit(int d, double volume, double area)
{
    if (d < 2)
        throw DomainError("deficit: dimension must be >= 2");
    require_positive(volume, area, "deficit");
    return std::pow(area, d) - std::pow(static_cast<double>(d), d) * kappa(d) * std::pow(volume, d - 1);
}

bool holds_with_tolerance(double lhs, double rhs, double scale) noexcept
{
    return lhs >= rhs - 1e-12 * std::max({std::abs(lhs), std::abs(rhs), scale});
}

bool InequalityReport::all_hold() const noexcept
{
    return std::all_of(rows.begin(), rows.end(), [](const InequalityRow& r) { return r.holds; });
}

InequalityReport bonnesen_general(int d, double volume, double area)
{
    if (d < 2)
        throw DomainError("bonnesen_general: dimension must be >= 2");
    require_positive(volume, area, "bonnesen_general");

    InequalityReport rep;
    rep.dimension = d;
    rep.volume = volume;
    rep.area = area;
    rep.kappa_d = kappa(d);
    rep.r = d * volume / area;
    rep.deficit = deficit(d, volume, area);

    const double k = rep.kappa_d;
    const double r = rep.r;
    const double rd1 = std::pow(r, d - 1);
    const double ad = std::pow(area, d);
    rep.rows.push_back(row("deficit >= (A - d k r^(d-1))^d", rep.deficit, std::pow(area - d * k * rd1, d), ad));
    rep.rows.push_back(row("deficit >= (V/r - k r^(d-1))^d", rep.deficit, std::pow(volume / r - k * rd1, d), ad));
    rep.rows.push_back(row("r A >= V + (d-1) k r^d", r * area, volume + (d - 1) * k * rd1 * r));

    const double lhs = std::pow(area - d * k * rd1, d) * std::pow(area, d * (d - 1));
    const double rhs = std::pow(rep.deficit, d);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), std::pow(1e-6 * std::pow(area, d), d)});
    rep.deficit_identity_residual = std::abs(lhs - rhs) / scale;
    return rep;
}

InequalityReport bonnesen_2d(double perimeter, double area, double r)
{
    require_positive(area, perimeter, "bonnesen_2d");
    if (!(r > 0.0))
        throw DomainError("bonnesen_2d: r must be positive");
    if (r > perimeter / (2.0 * pi) * (1.0 + 1e-12))
        throw DomainError("bonnesen_2d: an inscribed radius cannot exceed P / (2 pi)");

    InequalityReport rep;
    rep.dimension = 2;
    rep.volume = area;
    rep.area = perimeter;
    rep.r = r;
    rep.kappa_d = pi;
    rep.deficit = perimeter * perimeter - 4.0 * pi * area;
    const double a = perimeter - 2.0 * pi * r;
    const double b = area / r - pi * r;
    const double p2 = perimeter * perimeter;
    rep.rows.push_back(row("P^2 - 4 pi A >= (P - 2 pi r)^2", rep.deficit, a * a, p2));
    rep.rows.push_back(row("P^2 - 4 pi A >= (A/r - pi r)^2", rep.deficit, b * b, p2));
    rep.rows.push_back(row("r P >= A + pi r^2", r * perimeter, area + pi * r * r));
    return rep;
}

}  // namespace isolab
