#include "isolab/homogeneity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isolab/error.hpp"
#include "isolab/inequalities.hpp"

namespace isolab {
namespace {

void require_positive(double volume, double area, const char* what)
{
    if (!(volume > 0.0) || !(area > 0.0))
        throw DomainError(std::string(what) + ": volume and area must be positive");
}

double median(std::vector<double> v)
{
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double rel_spread(const std::vector<double>& v, double center)
{
    double worst = 0.0;
    for (double x : v)
        worst = std::max(worst, std::abs(x - center));
    return worst / std::abs(center);
}

void require_grid(const FamilySpec& family, std::span<const double> grid, const char* what)
{
    if (grid.size() < 32)
        throw DomainError(std::string(what) + ": grid needs at least 32 points");
    for (double s : grid)
        if (!family.domain.contains(s))
            throw DomainError(std::string(what) + ": grid point outside the family domain");
}

}  // namespace

double isoperimetric_ratio(int d, double volume, double area)
{
    if (d < 2)
        throw DomainError("isoperimetric_ratio: dimension must be >= 2");
    require_positive(volume, area, "isoperimetric_ratio");
    return std::pow(area, d) / std::pow(volume, d - 1);
}

double tong_inradius(int d, double volume, double area)
{
    if (d < 2)
        throw DomainError("tong_inradius: dimension must be >= 2");
    require_positive(volume, area, "tong_inradius");
    return d * volume / area;
}

double isoperimetric_floor(int d) { return std::pow(static_cast<double>(d), d) * kappa(d); }

const char* to_string(Verdict v) noexcept
{
    return v == Verdict::homogeneous ? "homogeneous" : "not_homogeneous";
}

bool HomogeneityReport::criteria_agree() const noexcept
{
    const bool i = criterion_i_passed();
    return i == criterion_ii_passed() && i == criterion_iii_passed();
}

HomogeneityReport classify(const FamilySpec& family, std::span<const double> grid, double rtol, Exec exec,
                           const QuadratureOptions& quad)
{
    require_grid(family, grid, "classify");
    if (!(rtol > 0.0))
        throw DomainError("classify: rtol must be positive");

    const int d = family.dimension;
    HomogeneityReport rep;
    rep.family_id = family.id;
    rep.dimension = d;
    rep.grid.assign(grid.begin(), grid.end());
    rep.rtol = rtol;
    rep.floor = isoperimetric_floor(d);

    auto measures = evaluate_grid(family, grid, exec);
    rep.q_values.resize(grid.size());
    std::vector<double> tong(grid.size());
    std::vector<double> k2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto [v, a] = measures[i];
        rep.q_values[i] = isoperimetric_ratio(d, v, a);
        tong[i] = tong_inradius(d, v, a);
        const double phi = std::pow(v, 1.0 / d);
        k2[i] = a / std::pow(phi, d - 1);
    }
    rep.q_center = median(rep.q_values);
    rep.q_min = *std::min_element(rep.q_values.begin(), rep.q_values.end());
    rep.q_rel_spread = rel_spread(rep.q_values, rep.q_center);
    rep.verdict = rep.q_rel_spread <= rtol ? Verdict::homogeneous : Verdict::not_homogeneous;
    rep.k_constant = rep.verdict == Verdict::homogeneous ? rep.q_center : std::numeric_limits<double>::quiet_NaN();

    // (ii) A^d = k V^(d-1)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double target = rep.q_center * std::pow(measures[i].volume, d - 1);
        rep.criterion_ii_residual =
            std::max(rep.criterion_ii_residual, std::abs(std::pow(measures[i].area, d) - target) / target);
    }
    rep.criterion_ii_tolerance = rtol;

    // (iii) A = k2 phi^(d-1)
    rep.criterion_iii_residual = rel_spread(k2, median(k2));
    rep.criterion_iii_tolerance = rtol;

    // (i) r_quad - d V/A constant
    try {
        auto curve = inradius_by_quadrature(family, grid.front(), 0.0, grid, quad, exec);
        std::vector<double> offsets(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            offsets[i] = curve.samples[i].r - tong[i];
        rep.fitted_offset = median(offsets);
        for (double o : offsets)
            rep.criterion_i_residual = std::max(rep.criterion_i_residual, std::abs(o - rep.fitted_offset));
        double scale = 0.0;
        for (double t : tong)
            scale = std::max(scale, std::abs(t));
        rep.criterion_i_tolerance = rtol * scale + curve.quadrature_error_estimate;
    } catch (const DomainError&) {
        // Non-monotone V: the quadrature inradius does not exist on this grid.
        rep.criterion_i_residual = std::numeric_limits<double>::infinity();
        rep.criterion_i_tolerance = 0.0;
    }
    return rep;
}

double elasticity(const FamilySpec& family, const InradiusCurve& curve, double s, const QuadratureOptions& quad)
{
    const double r = inradius_at(family, curve, s, quad);
    if (!(r > 0.0))
        throw DomainError("elasticity: r(s) <= 0 for this anchor; the value depends on the anchor choice");
    const Measures m = family.eval(s);
    return r * m.area / m.volume;
}

ConstantAreaReport constant_area_check(const FamilySpec& family, std::span<const double> grid, double rtol,
                                       const QuadratureOptions& quad)
{
    require_grid(family, grid, "constant_area_check");
    auto measures = evaluate_grid(family, grid, Exec::serial);
    std::vector<double> areas(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        areas[i] = measures[i].area;

    ConstantAreaReport rep;
    rep.area_rel_spread = rel_spread(areas, median(areas));
    rep.area_constant = rep.area_rel_spread <= rtol;
    if (!rep.area_constant)
        return rep;

    auto curve = inradius_by_quadrature(family, grid.front(), 0.0, grid, quad, Exec::serial);
    std::vector<double> offsets(grid.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ratio = measures[i].volume / measures[i].area;
        offsets[i] = curve.samples[i].r - ratio;
        scale = std::max(scale, std::abs(ratio));
    }
    const double center = median(offsets);
    for (double o : offsets)
        rep.offset_spread = std::max(rep.offset_spread, std::abs(o - center));
    rep.offset_tolerance = rtol * scale + curve.quadrature_error_estimate;
    rep.offset_constant = rep.offset_spread <= rep.offset_tolerance;
    return rep;
}

}  // namespace isolab
