#include "isolab/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "isolab/error.hpp"
#include "isolab/homogeneity.hpp"
#include "isolab/optimize.hpp"

namespace isolab {
namespace {

using std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Unconstrained coordinate y <-> box coordinate x.
double to_box(const Interval& I, double y)
{
    const bool lo = std::isfinite(I.lo);
    const bool hi = std::isfinite(I.hi);
    if (lo && hi)
        return I.lo + I.width() / (1.0 + std::exp(-y));
    if (lo)
        return I.lo + std::exp(y);
    if (hi)
        return I.hi - std::exp(y);
    return y;
}

// Latin-hypercube coordinate u in (0, 1) -> unconstrained start.
double start_coordinate(const Interval& I, double u)
{
    const bool lo = std::isfinite(I.lo);
    const bool hi = std::isfinite(I.hi);
    if (lo && hi) {
        const double p = 0.05 + 0.9 * u;
        return std::log(p / (1.0 - p));
    }
    if (lo || hi)
        return std::log(0.1) + u * std::log(100.0);
    return -10.0 + 20.0 * u;
}

double ratio_or_inf(const NParamFamilySpec& cls, std::span<const double> x)
{
    if (!cls.contains(x))
        return std::numeric_limits<double>::infinity();
    const double v = cls.volume(x);
    const double a = cls.area(x);
    if (!(v > 0.0) || !(a > 0.0))
        return std::numeric_limits<double>::infinity();
    return std::pow(a, cls.dimension) / std::pow(v, cls.dimension - 1);
}

std::string describe(const Interval& I)
{
    std::ostringstream os;
    os << '(' << I.lo << ", " << I.hi << ')';
    return os.str();
}

// Scan points for one coordinate of the box.
std::vector<double> coordinate_scan(const Interval& I, double hint, std::size_t n)
{
    if (I.bounded())
        return interior_samples(I, n);
    const double scale = std::isfinite(hint) && hint != 0.0 ? std::max(1.0, std::abs(hint)) : 1.0;
    std::vector<double> out;
    out.reserve(n);
    const double lmin = std::log(1e-8 * scale);
    const double lmax = std::log(1e8 * scale);
    for (std::size_t i = 0; i < n; ++i) {
        const double off = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) / static_cast<double>(n - 1));
        if (std::isfinite(I.lo))
            out.push_back(I.lo + off);
        else if (std::isfinite(I.hi))
            out.push_back(I.hi - off);
        else
            out.push_back(std::sinh(-20.0 + 40.0 * static_cast<double>(i) / static_cast<double>(n - 1)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double flo)
{
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section search for the extremum of `sign * f` on [a, b].
std::pair<double, double> golden_min(const std::function<double(double)>& f, double a, double b, double sign)
{
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = sign * f(c);
    double fd = sign * f(d);
    for (int it = 0; it < 200 && b - a > 1e-15 * (std::abs(a) + std::abs(b)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = sign * f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = sign * f(d);
        }
    }
    return fc < fd ? std::pair{c, sign * fc} : std::pair{d, sign * fd};
}

// Roots of f on the sorted grid: sign changes plus dips that cross zero
// between nodes.
std::vector<double> roots_on_grid(const std::function<double(double)>& f, const std::vector<double>& grid)
{
    const std::size_t n = grid.size();
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i)
        vals[i] = f(grid[i]);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!std::isfinite(vals[i]) || !std::isfinite(vals[i + 1]))
            continue;
        if (vals[i] == 0.0) {
            roots.push_back(grid[i]);
            continue;
        }
        if ((vals[i] < 0.0) != (vals[i + 1] < 0.0) && vals[i + 1] != 0.0)
            roots.push_back(bisect(f, grid[i], grid[i + 1], vals[i]));
    }
    if (n >= 1 && vals[n - 1] == 0.0)
        roots.push_back(grid[n - 1]);

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double l = vals[i - 1], c = vals[i], r = vals[i + 1];
        if (!std::isfinite(l) || !std::isfinite(c) || !std::isfinite(r))
            continue;
        const bool dip = c > 0.0 && l > 0.0 && r > 0.0 && c <= l && c <= r;
        const bool bump = c < 0.0 && l < 0.0 && r < 0.0 && c >= l && c >= r;
        if (!dip && !bump)
            continue;
        const double sign = dip ? 1.0 : -1.0;
        auto [t, ft] = golden_min(f, grid[i - 1], grid[i + 1], sign);
        if (ft == 0.0) {
            roots.push_back(t);
        } else if ((ft < 0.0) == dip) {
            roots.push_back(bisect(f, grid[i - 1], t, l));
            roots.push_back(bisect(f, t, grid[i + 1], ft));
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || std::abs(r - unique.back()) > 1e-12 * std::max(1.0, std::abs(r)))
            unique.push_back(r);
    return unique;
}

std::vector<double> gradient(const NParamFamilySpec& cls, const std::vector<double>& x, double q)
{
    const double h0 = std::sqrt(std::numeric_limits<double>::epsilon());
    std::vector<double> g(x.size());
    auto y = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = h0 * std::max(std::abs(x[i]), 1.0);
        y[i] = x[i] + h;
        double qh = ratio_or_inf(cls, y);
        double step = y[i] - x[i];
        if (!std::isfinite(qh)) {
            // Near the upper edge of the box: step backwards instead.
            y[i] = x[i] - h;
            qh = ratio_or_inf(cls, y);
            step = y[i] - x[i];
        }
        g[i] = (qh - q) / step;
        y[i] = x[i];
    }
    return g;
}

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

enum class Correction
{
    converged,
    left_domain,
    diverged,
    critical
};

// Newton projection onto Q = k along the gradient.
Correction correct(const NParamFamilySpec& cls, double k, std::vector<double>& x, int max_iters, double tol,
                   int& iterations)
{
    iterations = 0;
    for (int it = 0; it <= max_iters; ++it) {
        const double q = ratio_or_inf(cls, x);
        if (!std::isfinite(q))
            return Correction::left_domain;
        if (std::abs(q - k) / k <= tol)
            return Correction::converged;
        if (it == max_iters)
            break;
        const auto g = gradient(cls, x, q);
        const double gg = dot(g, g);
        if (!(std::sqrt(gg) * std::max(norm(x), 1.0) > 1e-6 * q))
            return Correction::critical;
        const double step = (q - k) / gg;
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] -= step * g[i];
        ++iterations;
    }
    return Correction::diverged;
}

std::vector<double> tangent_from(const std::vector<double>& dir, const std::vector<double>& g)
{
    const double gg = dot(g, g);
    auto t = dir;
    const double c = dot(dir, g) / gg;
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] -= c * g[i];
    const double len = norm(t);
    if (!(len > 1e-12))
        return {};
    for (double& v : t)
        v /= len;
    return t;
}

}  // namespace

double class_ratio(const NParamFamilySpec& cls, std::span<const double> x)
{
    Measures m = cls.eval(x);
    return isoperimetric_ratio(cls.dimension, m.volume, m.area);
}

std::vector<double> reduce_point(std::span<const double> x, int m)
{
    if (x.empty() || m < 1 || static_cast<std::size_t>(m) > x.size())
        throw DomainError("reduce_point: prefix length out of range");
    if (!(x[0] > 0.0))
        throw DomainError("reduce_point: x1 must be positive");
    std::vector<double> z;
    for (std::size_t i = 1; i < x.size(); ++i)
        z.push_back(i < static_cast<std::size_t>(m) ? x[i] / x[0] : x[i]);
    return z;
}

NParamFamilySpec reduce_homogeneous_prefix(const NParamFamilySpec& cls, std::uint64_t seed)
{
    if (!cls.homogeneous_prefix_m)
        throw DomainError(cls.id + ": no homogeneous prefix declared");
    const int m = *cls.homogeneous_prefix_m;
    const std::size_t n = cls.arity();
    if (m < 1 || static_cast<std::size_t>(m) > n)
        throw DomainError(cls.id + ": declared prefix m = " + std::to_string(m) + " out of range");
    for (int i = 0; i < m; ++i) {
        const auto& I = cls.domain[static_cast<std::size_t>(i)];
        if (I.lo != 0.0 || I.hi != kInf) {
            std::ostringstream os;
            os << cls.id << ": declared prefix m = " << m << " rejected: x" << (i + 1) << " ranges over "
               << describe(I) << ", not (0, inf), so it is not a scaling variable";
            throw DomainError(os.str());
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int d = cls.dimension;
    for (int trial = 0; trial < 64; ++trial) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& I = cls.domain[i];
            if (I.bounded())
                x[i] = I.lo + I.width() * (0.05 + 0.9 * u(rng));
            else
                x[i] = to_box(I, -1.0 + 2.0 * u(rng));
        }
        const double t = std::exp(-1.0 + 2.0 * u(rng));
        auto tx = x;
        for (int i = 0; i < m; ++i)
            tx[static_cast<std::size_t>(i)] *= t;
        const Measures base = cls.eval(x);
        const Measures scaled = cls.eval(tx);
        const double ev = std::pow(t, d) * base.volume;
        const double ea = std::pow(t, d - 1) * base.area;
        if (std::abs(scaled.volume - ev) > 1e-10 * std::abs(ev) || std::abs(scaled.area - ea) > 1e-10 * std::abs(ea)) {
            std::ostringstream os;
            os << cls.id << ": declared prefix m = " << m << " rejected: V, A are not homogeneous of degrees " << d
               << ", " << d - 1 << " in x1..x" << m << " (t = " << t << ")";
            throw DomainError(os.str());
        }
    }

    NParamFamilySpec red;
    red.id = cls.id + "/reduced";
    red.dimension = d;
    red.domain.assign(cls.domain.begin() + 1, cls.domain.end());
    red.params = cls.params;
    auto lift = [](std::span<const double> z) {
        std::vector<double> x;
        x.reserve(z.size() + 1);
        x.push_back(1.0);
        x.insert(x.end(), z.begin(), z.end());
        return x;
    };
    red.volume = [cls, lift](std::span<const double> z) { return cls.volume(lift(z)); };
    red.area = [cls, lift](std::span<const double> z) { return cls.area(lift(z)); };
    return red;
}

KminResult kmin(const NParamFamilySpec& cls, std::size_t starts, double tol, std::uint64_t seed, Exec exec)
{
    if (starts < 8)
        throw DomainError("kmin: at least 8 starts are required");
    if (!(tol > 0.0))
        throw DomainError("kmin: tol must be positive");
    for (const auto& I : cls.domain)
        if (!(I.lo < I.hi))
            throw DomainError("kmin: " + cls.id + " has an empty coordinate interval");

    const bool reduced = cls.homogeneous_prefix_m.has_value() && cls.arity() >= 2;
    const NParamFamilySpec work = reduced ? reduce_homogeneous_prefix(cls, seed) : cls;
    const std::size_t n = work.arity();

    KminResult res;
    res.class_id = cls.id;
    res.dimension = cls.dimension;
    res.floor = isoperimetric_floor(cls.dimension);
    res.multistart_count = starts;

    auto to_x = [&work](std::span<const double> y) {
        std::vector<double> x(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            x[i] = to_box(work.domain[i], y[i]);
        return x;
    };
    auto full = [&](const std::vector<double>& x) {
        if (!reduced)
            return x;
        std::vector<double> out{1.0};
        out.insert(out.end(), x.begin(), x.end());
        return out;
    };

    if (n == 0) {
        std::vector<double> none;
        res.kmin = ratio_or_inf(work, none);
        res.argmin = full(none);
        return res;
    }

    Objective objective = [&](std::span<const double> y) { return ratio_or_inf(work, to_x(y)); };
    NelderMeadOptions opts;
    opts.ftol = tol;

    auto unit = latin_hypercube(starts, n, seed);
    std::vector<NelderMeadResult> runs(starts);
    for_each_index(starts, exec, [&](std::size_t i) {
        std::vector<double> y0(n);
        for (std::size_t j = 0; j < n; ++j)
            y0[j] = start_coordinate(work.domain[j], unit[i][j]);
        runs[i] = nelder_mead(objective, y0, opts);
    });

    std::size_t best = starts;
    for (std::size_t i = 0; i < starts; ++i) {
        res.evaluations += runs[i].evaluations;
        if (std::isfinite(runs[i].f) && (best == starts || runs[i].f < runs[best].f))
            best = i;
    }
    if (best == starts)
        throw ConvergenceError("kmin: " + cls.id + ": no start produced a finite ratio");

    auto x = to_x(runs[best].x);
    double q = ratio_or_inf(work, x);

    // Boundary infimum: the coordinate sits at the edge and pushing it further
    // keeps lowering Q.
    for (std::size_t j = 0; j < n; ++j) {
        const auto& I = work.domain[j];
        const double w = I.bounded() ? I.width() : 1.0;
        for (bool lower : {true, false}) {
            const double edge = lower ? I.lo : I.hi;
            if (!std::isfinite(edge))
                continue;
            const double dist = std::abs(x[j] - edge);
            if (dist > 1e-6 * w)
                continue;
            // Fixed offsets, since Q may already be saturated at the found point.
            const double dir = lower ? 1.0 : -1.0;
            std::array<double, 3> qs{};
            for (int e = 0; e < 3; ++e) {
                auto p = x;
                p[j] = edge + dir * w * std::pow(10.0, -6 - e);
                qs[static_cast<std::size_t>(e)] = ratio_or_inf(work, p);
            }
            if (qs[0] > qs[1] && qs[1] > qs[2] && q <= qs[0])
                res.boundary.push_back({reduced ? j + 1 : j, lower});
        }
    }
    res.attained = res.boundary.empty();
    res.kmin = q;
    res.argmin = full(x);
    return res;
}

std::vector<KminRow> kmin_table(std::size_t starts, std::uint64_t seed, Exec exec)
{
    struct Spec
    {
        std::string id;
        Params params;
        std::string label;
        double analytic;
        bool attained;
        double tol;
    };
    const double r2 = std::sqrt(2.0);
    std::vector<Spec> specs = {
        {"triangle_sides", {}, "triangles", 12.0 * std::sqrt(3.0), true, 1e-6},
        {"right_triangle", {}, "right triangles", 2.0 * (2.0 + r2) * (2.0 + r2), true, 1e-6},
    };
    for (int n = 3; n <= 12; ++n)
        specs.push_back({"ngon", {{"n", static_cast<double>(n)}}, std::to_string(n) + "-gons",
                         4.0 * n * std::tan(pi / n), true, 1e-6});
    specs.push_back({"box3", {}, "rectangular parallelepipeds", 216.0, true, 1e-6});
    specs.push_back({"cylinder", {}, "right circular cylinders", 54.0 * pi, true, 1e-6});
    specs.push_back({"cone", {}, "right circular cones", 72.0 * pi, true, 1e-6});
    specs.push_back({"square_pyramid", {}, "right square pyramids", 288.0, true, 1e-6});
    specs.push_back({"ring_torus", {}, "ring tori (infimum)", 16.0 * pi * pi, false, 1e-4});

    std::vector<KminRow> rows;
    for (const auto& s : specs) {
        KminRow row;
        row.class_id = s.id;
        row.label = s.label;
        row.analytic = s.analytic;
        row.expected_attained = s.attained;
        row.tolerance = s.tol;
        try {
            // Starts run in parallel inside kmin; rows stay sequential.
            auto r = kmin(builtin_class(s.id, s.params), starts, 1e-13, seed, exec);
            row.computed = r.kmin;
            row.attained = r.attained;
            row.rel_error = std::abs(r.kmin - s.analytic) / s.analytic;
            row.ok = row.rel_error <= s.tol && row.attained == s.attained;
        } catch (const std::exception& e) {
            row.computed = kNaN;
            row.rel_error = kNaN;
            row.error = e.what();
            row.ok = false;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> coordinate_roots(const NParamFamilySpec& cls, double k, std::vector<double> x, std::size_t j)
{
    if (x.size() != cls.arity())
        throw DomainError(cls.id + ": point has the wrong number of coordinates");
    if (j >= x.size())
        throw DomainError(cls.id + ": coordinate index out of range");
    if (!(k > 0.0))
        throw DomainError("k must be positive");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i != j && !cls.domain[i].contains(x[i])) {
            std::ostringstream os;
            os << cls.id << ": fixed coordinate x" << (i + 1) << " = " << x[i] << " outside "
               << describe(cls.domain[i]);
            throw DomainError(os.str());
        }
    }
    const double hint = x[j];
    auto f = [&](double t) {
        x[j] = t;
        return ratio_or_inf(cls, x) - k;
    };
    return roots_on_grid(f, coordinate_scan(cls.domain[j], hint, 4096));
}

double solve_coordinate(const NParamFamilySpec& cls, double k, const CurveMap& fixed, std::size_t j, double s,
                        std::optional<double> previous)
{
    auto x = fixed(s);
    auto roots = coordinate_roots(cls, k, x, j);
    if (roots.empty()) {
        std::ostringstream os;
        os << cls.id << ": no root of Q = " << k << " in x" << (j + 1) << " over " << describe(cls.domain[j])
           << " at s = " << s << "; s lies outside the feasible interval";
        throw DomainError(os.str());
    }
    if (!previous)
        return roots.front();
    return *std::min_element(roots.begin(), roots.end(), [p = *previous](double a, double b) {
        return std::abs(a - p) < std::abs(b - p);
    });
}

Interval feasible_interval(const NParamFamilySpec& cls, double k, const CurveMap& fixed, std::size_t j,
                           Interval search, double tol)
{
    auto feasible = [&](double s) {
        try {
            return !coordinate_roots(cls, k, fixed(s), j).empty();
        } catch (const DomainError&) {
            return false;
        }
    };
    auto grid = interior_samples(search, 512);
    std::size_t best_lo = 0, best_len = 0;
    for (std::size_t i = 0; i < grid.size();) {
        if (!feasible(grid[i])) {
            ++i;
            continue;
        }
        std::size_t e = i;
        while (e < grid.size() && feasible(grid[e]))
            ++e;
        if (e - i > best_len) {
            best_lo = i;
            best_len = e - i;
        }
        i = e;
    }
    if (best_len == 0)
        throw DomainError(cls.id + ": no feasible parameter value found in " + describe(search));

    auto refine = [&](double bad, double good) {
        while (std::abs(good - bad) > tol) {
            const double mid = 0.5 * (bad + good);
            if (mid == bad || mid == good)
                break;
            (feasible(mid) ? good : bad) = mid;
        }
        return 0.5 * (bad + good);
    };
    const std::size_t last = best_lo + best_len - 1;
    const double lo = best_lo == 0 ? search.lo : refine(grid[best_lo - 1], grid[best_lo]);
    const double hi = last + 1 == grid.size() ? search.hi : refine(grid[last + 1], grid[last]);
    return {lo, hi};
}

double LevelSetCurve::max_residual() const noexcept
{
    double m = 0.0;
    for (const auto& p : points)
        m = std::max(m, p.residual);
    return m;
}

LevelSetCurve trace_level_set(const NParamFamilySpec& cls, double k, std::vector<double> x, int steps,
                              double step_size, const TraceOptions& opt)
{
    if (!(k > 0.0))
        throw DomainError("trace_level_set: k must be positive");
    if (steps < 1)
        throw DomainError("trace_level_set: steps must be >= 1");
    if (!(step_size > 0.0))
        throw DomainError("trace_level_set: step_size must be positive");
    if (x.size() != cls.arity() || !cls.contains(x))
        throw DomainError("trace_level_set: start point is not inside the class domain");
    const double q0 = ratio_or_inf(cls, x);
    if (!(std::abs(q0 - k) / k <= opt.start_tol)) {
        std::ostringstream os;
        os << "trace_level_set: |Q(x_start) - k| / k = " << std::abs(q0 - k) / k << " exceeds " << opt.start_tol;
        throw DomainError(os.str());
    }

    int iters = 0;
    switch (correct(cls, k, x, opt.max_corrector_iters, opt.corrector_tol, iters)) {
    case Correction::converged:
        break;
    case Correction::critical:
        throw ConvergenceError("trace_level_set: gradient of Q is numerically zero at the start (critical point)");
    default:
        throw ConvergenceError("trace_level_set: corrector failed at the start point");
    }

    const std::size_t n = x.size();
    double q = ratio_or_inf(cls, x);
    auto g = gradient(cls, x, q);
    if (!(norm(g) * std::max(norm(x), 1.0) > 1e-6 * q))
        throw ConvergenceError("trace_level_set: gradient of Q is numerically zero at the start (critical point)");

    std::vector<double> dir = opt.direction;
    if (dir.empty()) {
        dir.assign(n, 0.0);
        dir[0] = 1.0;
    }
    if (dir.size() != n)
        throw DomainError("trace_level_set: direction has the wrong size");
    auto t = tangent_from(dir, g);
    for (std::size_t axis = 0; t.empty() && axis < n; ++axis) {
        std::vector<double> e(n, 0.0);
        e[axis] = 1.0;
        t = tangent_from(e, g);
    }
    if (t.empty())
        throw ConvergenceError("trace_level_set: level set has no tangent direction at the start");

    LevelSetCurve curve;
    curve.class_id = cls.id;
    curve.k = k;
    curve.points.push_back({0.0, x, t, q, std::abs(q - k) / k});

    double h = std::clamp(step_size, opt.min_step, opt.max_step);
    int easy = 0;
    double arclength = 0.0;
    while (static_cast<int>(curve.points.size()) <= steps) {
        auto y = x;
        for (std::size_t i = 0; i < n; ++i)
            y[i] += h * t[i];
        Correction c = cls.contains(y) ? correct(cls, k, y, opt.max_corrector_iters, opt.corrector_tol, iters)
                                       : Correction::left_domain;
        if (c == Correction::converged) {
            double jump = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                jump += (y[i] - x[i] - h * t[i]) * (y[i] - x[i] - h * t[i]);
            if (std::sqrt(jump) > h)
                c = Correction::diverged;  // landed on another sheet
        }
        if (c != Correction::converged) {
            if (c == Correction::critical)
                throw ConvergenceError("trace_level_set: gradient of Q vanished during correction");
            if (h <= opt.min_step) {
                if (c == Correction::left_domain) {
                    curve.stop_reason = "boundary";
                    return curve;
                }
                throw ConvergenceError("trace_level_set: corrector diverged at the minimum step");
            }
            h = std::max(0.5 * h, opt.min_step);
            easy = 0;
            continue;
        }

        double ds = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            ds += (y[i] - x[i]) * (y[i] - x[i]);
        arclength += std::sqrt(ds);
        x = std::move(y);
        q = ratio_or_inf(cls, x);
        g = gradient(cls, x, q);
        if (!(norm(g) * std::max(norm(x), 1.0) > 1e-6 * q))
            throw ConvergenceError("trace_level_set: gradient of Q vanished along the curve");
        auto nt = tangent_from(t, g);
        if (nt.empty())
            throw ConvergenceError("trace_level_set: lost the tangent direction");
        t = std::move(nt);
        curve.points.push_back({arclength, x, t, q, std::abs(q - k) / k});

        if (iters <= 3 && ++easy >= 4) {
            h = std::min(2.0 * h, opt.max_step);
            easy = 0;
        } else if (iters > 3) {
            easy = 0;
        }
    }
    curve.stop_reason = "steps";
    return curve;
}

FamilySpec curve_as_family(const NParamFamilySpec& cls, const LevelSetCurve& curve)
{
    if (curve.points.size() < 2)
        throw DomainError("curve_as_family: curve needs at least two points");
    auto points = std::make_shared<std::vector<LevelSetPoint>>(curve.points);
    const double k = curve.k;
    auto at = [cls, points, k](double s) {
        const auto& pts = *points;
        auto it = std::upper_bound(pts.begin(), pts.end(), s,
                                   [](double v, const LevelSetPoint& p) { return v < p.s; });
        std::size_t i = it == pts.begin() ? 0 : static_cast<std::size_t>(it - pts.begin()) - 1;
        i = std::min(i, pts.size() - 2);
        const auto& a = pts[i];
        const auto& b = pts[i + 1];
        const double len = b.s - a.s;
        const double u = (s - a.s) / len;
        const double h00 = 2 * u * u * u - 3 * u * u + 1, h10 = u * u * u - 2 * u * u + u;
        const double h01 = -2 * u * u * u + 3 * u * u, h11 = u * u * u - u * u;
        std::vector<double> x(a.x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = h00 * a.x[j] + h10 * len * a.tangent[j] + h01 * b.x[j] + h11 * len * b.tangent[j];
        int iters = 0;
        if (correct(cls, k, x, 30, 1e-14, iters) != Correction::converged &&
            !(std::abs(ratio_or_inf(cls, x) - k) / k <= 1e-12))
            throw ConvergenceError("curve_as_family: could not project onto the level set");
        return cls.eval(x);
    };
    return make_family(
        cls.id + "/level", cls.dimension, {curve.points.front().s, curve.points.back().s},
        [at](double s) { return at(s).volume; }, [at](double s) { return at(s).area; });
}

std::vector<double> scan_level_roots(const NParamFamilySpec& cls, double k, Interval window, std::size_t samples)
{
    if (cls.arity() != 1)
        throw DomainError("scan_level_roots: class must have exactly one coordinate");
    if (samples < 16)
        throw DomainError("scan_level_roots: need at least 16 samples");
    // Finite window ends are scanned too; ends outside the domain give inf.
    auto grid = window.bounded() ? linspace(window.lo, window.hi, samples) : interior_samples(window, samples);
    std::vector<double> x(1);
    auto f = [&](double t) {
        x[0] = t;
        return ratio_or_inf(cls, x) - k;
    };
    return roots_on_grid(f, grid);
}

}  // namespace isolab
