#include "isolab/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isolab/error.hpp"

namespace isolab {
namespace {

void require_increasing_inside(std::span<const double> grid, const Interval& domain, const std::string& what)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!domain.contains(grid[i])) {
            std::ostringstream os;
            os << what << ": grid point " << grid[i] << " is not strictly inside (" << domain.lo << ", "
               << domain.hi << ")";
            throw DomainError(os.str());
        }
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw DomainError(what + ": grid must be strictly increasing");
    }
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// V'(t)/A(t), rejecting values whose sign opposes `direction`.
std::function<double(double)> slope_ratio(const FamilySpec& family, int direction)
{
    return [&family, direction](double t) {
        const double value = volume_slope(family, t) / family.eval(t).area;
        if (direction != 0 && direction * value < -1e-12) {
            std::ostringstream os;
            os << family.id << ": dV/ds changes sign inside the domain (at s = " << t
               << "); split the family with monotone_partition first";
            throw DomainError(os.str());
        }
        return value;
    };
}

int volume_direction(const FamilySpec& family, std::span<const double> grid)
{
    if (grid.size() >= 2) {
        int dir = sign_of(family.eval(grid.back()).volume - family.eval(grid.front()).volume);
        if (dir != 0)
            return dir;
    }
    return grid.empty() ? 0 : sign_of(volume_slope(family, grid.front()));
}

bool valid_anchor(const Interval& domain, double s0)
{
    return domain.contains(s0) || (std::isfinite(domain.lo) && s0 == domain.lo) ||
           (std::isfinite(domain.hi) && s0 == domain.hi);
}

}  // namespace

double derivative_step(double s, double scale)
{
    double base = std::max(std::abs(s), scale);
    if (!(base > 0.0))
        base = 1.0;
    return std::cbrt(std::numeric_limits<double>::epsilon()) * base;
}

double derivative(const std::function<double(double)>& f, double s, double scale)
{
    double h = derivative_step(s, scale);
    // Make the step exactly representable relative to s.
    volatile double sp = s + h;
    h = sp - s;

    auto central = [&](double step) {
        const double up = f(s + step);
        const double down = f(s - step);
        if (!std::isfinite(up) || !std::isfinite(down)) {
            std::ostringstream os;
            os << "derivative: non-finite evaluation inside the stencil around s = " << s;
            throw DomainError(os.str());
        }
        return (up - down) / (2.0 * step);
    };
    const double coarse = central(h);
    const double fine = central(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

double volume_slope(const FamilySpec& family, double s)
{
    if (family.has_exact_derivative()) {
        if (!family.domain.contains(s)) {
            std::ostringstream os;
            os << family.id << ": s = " << s << " outside the domain";
            throw DomainError(os.str());
        }
        return family.volume_derivative(s);
    }
    return derivative([&family](double t) { return family.eval(t).volume; }, s, 0.0);
}

InradiusCurve inradius_by_quadrature(const FamilySpec& family, double s0, double C, std::span<const double> grid,
                                     const QuadratureOptions& options, Exec exec)
{
    if (grid.empty())
        throw DomainError("inradius_by_quadrature: empty grid");
    require_increasing_inside(grid, family.domain, "inradius_by_quadrature");
    if (!valid_anchor(family.domain, s0))
        throw DomainError("inradius_by_quadrature: anchor s0 outside the domain");

    const int direction = volume_direction(family, grid);
    auto integrand = slope_ratio(family, direction);

    std::vector<double> nodes(grid.begin(), grid.end());
    auto pos = std::lower_bound(nodes.begin(), nodes.end(), s0);
    const bool anchor_on_grid = pos != nodes.end() && *pos == s0;
    const std::size_t anchor = static_cast<std::size_t>(pos - nodes.begin());
    if (!anchor_on_grid)
        nodes.insert(pos, s0);

    auto pieces = integrate_segments(integrand, nodes, options, exec);

    std::vector<double> r(nodes.size());
    r[anchor] = C;
    for (std::size_t k = anchor + 1; k < nodes.size(); ++k)
        r[k] = r[k - 1] + pieces[k - 1].value;
    for (std::size_t k = anchor; k-- > 0;)
        r[k] = r[k + 1] - pieces[k].value;

    InradiusCurve curve;
    curve.family_id = family.id;
    curve.anchor_s0 = s0;
    curve.anchor_value_C = C;
    for (const auto& p : pieces)
        curve.quadrature_error_estimate += p.error;
    curve.samples.reserve(grid.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (!anchor_on_grid && k == anchor)
            continue;
        curve.samples.push_back({nodes[k], r[k]});
    }
    return curve;
}

InradiusCurve tong_anchored_inradius(const FamilySpec& family, double s0, std::span<const double> grid,
                                     const QuadratureOptions& options, Exec exec)
{
    Measures m = family.eval(s0);
    return inradius_by_quadrature(family, s0, family.dimension * m.volume / m.area, grid, options, exec);
}

double inradius_at(const FamilySpec& family, const InradiusCurve& curve, double s, const QuadratureOptions& options)
{
    if (curve.samples.empty())
        throw DomainError("inradius_at: curve has no samples");
    const double lo = std::min(curve.anchor_s0, curve.samples.front().s);
    const double hi = std::max(curve.anchor_s0, curve.samples.back().s);
    if (!(s >= lo && s <= hi) || !family.domain.contains(s))
        throw DomainError("inradius_at: s outside the range covered by the curve");

    auto nearest = std::min_element(curve.samples.begin(), curve.samples.end(),
                                    [s](const CurveSample& a, const CurveSample& b) {
                                        return std::abs(a.s - s) < std::abs(b.s - s);
                                    });
    double base_s = nearest->s;
    double base_r = nearest->r;
    if (std::abs(curve.anchor_s0 - s) < std::abs(base_s - s)) {
        base_s = curve.anchor_s0;
        base_r = curve.anchor_value_C;
    }
    std::vector<double> g{s};
    auto integrand = slope_ratio(family, volume_direction(family, std::span<const double>(g)));
    return base_r + integrate(integrand, base_s, s, options).value;
}

DerivativeRelationReport verify_derivative_relation(const FamilySpec& family, const InradiusCurve& curve, double rtol,
                                                    const QuadratureOptions& options)
{
    if (curve.samples.size() < 10)
        throw DomainError("verify_derivative_relation: needs at least 8 interior samples (10 total), got " +
                          std::to_string(curve.samples.size()));
    if (!(rtol > 0.0))
        throw DomainError("verify_derivative_relation: rtol must be positive");

    std::vector<double> grid;
    for (const auto& p : curve.samples)
        grid.push_back(p.s);
    auto integrand = slope_ratio(family, volume_direction(family, grid));
    auto volume = [&family](double t) { return family.eval(t).volume; };

    DerivativeRelationReport report;
    report.rtol = rtol;
    for (std::size_t i = 1; i + 1 < curve.samples.size(); ++i) {
        const double s = curve.samples[i].s;
        const double r0 = curve.samples[i].r;
        auto r_local = [&](double t) { return r0 + integrate(integrand, s, t, options).value; };
        const double dv = derivative(volume, s, 0.0);
        const double dr = derivative(r_local, s, 0.0);
        const double dv_dr = dv / dr;
        const double a = family.eval(s).area;
        const double dev = std::abs(dv_dr - a) / a;
        report.s.push_back(s);
        report.dv_dr.push_back(dv_dr);
        report.area.push_back(a);
        report.rel_deviation.push_back(dev);
        if (!(dev <= report.max_rel_deviation))
            report.max_rel_deviation = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
    }
    report.passed = report.max_rel_deviation <= rtol;
    return report;
}

FamilySpec reparameterize(const FamilySpec& family, const std::function<double(double)>& phi, Interval new_domain,
                          const std::function<double(double)>& phi_derivative)
{
    if (!phi)
        throw DomainError("reparameterize: phi is empty");
    auto samples = interior_samples(new_domain, 257);
    int direction = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double v = phi(samples[i]);
        if (!family.domain.contains(v)) {
            std::ostringstream os;
            os << "reparameterize: phi(" << samples[i] << ") = " << v << " leaves the family domain";
            throw DomainError(os.str());
        }
        if (i > 0) {
            const int d = sign_of(v - prev);
            if (d == 0 || (direction != 0 && d != direction)) {
                std::ostringstream os;
                os << "reparameterize: phi is not strictly monotone near t = " << samples[i];
                throw DomainError(os.str());
            }
            direction = d;
        }
        prev = v;
    }

    FamilySpec out;
    out.id = family.id;
    out.dimension = family.dimension;
    out.domain = new_domain;
    out.params = family.params;
    out.volume = [family, phi](double t) { return family.eval(phi(t)).volume; };
    out.area = [family, phi](double t) { return family.eval(phi(t)).area; };
    if (family.has_exact_derivative() && phi_derivative) {
        out.volume_derivative = [family, phi, phi_derivative](double t) {
            return family.volume_derivative(phi(t)) * phi_derivative(t);
        };
    }
    return out;
}

MonotonePartition monotone_partition(const std::function<double(double)>& f, Interval domain,
                                     std::span<const double> grid, double refine_tol)
{
    if (grid.size() < 16)
        throw DomainError("monotone_partition: grid needs at least 16 points");
    if (!(refine_tol > 0.0))
        throw DomainError("monotone_partition: refine_tol must be positive");
    require_increasing_inside(grid, domain, "monotone_partition");

    const std::size_t n = grid.size();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = f(grid[i]);

    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<int> seg(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double diff = values[i + 1] - values[i];
        const double scale = std::max(std::abs(values[i]), std::abs(values[i + 1]));
        seg[i] = std::abs(diff) <= 4.0 * eps * scale ? 0 : sign_of(diff);
    }

    auto turning_point = [&](double lo, double hi, int rising) {
        while (hi - lo > refine_tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            if (sign_of(derivative(f, mid, 0.0)) == rising)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    MonotonePartition out;
    double branch_start = domain.lo;
    int current = 0;
    std::size_t i = 0;
    while (i < seg.size()) {
        if (seg[i] == 0) {
            std::size_t j = i;
            while (j < seg.size() && seg[j] == 0)
                ++j;
            const double gap_lo = i == 0 ? domain.lo : grid[i];
            const double gap_hi = j == seg.size() ? domain.hi : grid[j];
            if (current != 0)
                out.branches.push_back({{branch_start, gap_lo}, current});
            out.gaps.push_back({gap_lo, gap_hi});
            branch_start = gap_hi;
            current = 0;
            i = j;
            continue;
        }
        if (current != 0 && seg[i] != current) {
            const double b = turning_point(grid[i - 1], grid[i + 1], current);
            out.branches.push_back({{branch_start, b}, current});
            out.breakpoints.push_back(b);
            branch_start = b;
        }
        current = seg[i];
        ++i;
    }
    if (current != 0)
        out.branches.push_back({{branch_start, domain.hi}, current});
    return out;
}

}  // namespace isolab
