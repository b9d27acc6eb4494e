#include "isolab/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "isolab/error.hpp"

namespace isolab {
namespace {

using std::numbers::pi;

std::string describe(const Interval& I)
{
    std::ostringstream os;
    os << '(' << I.lo << ", " << I.hi << ')';
    return os.str();
}

// Reads named parameters, rejecting anything not listed in `allowed`.
class ParamReader
{
  public:
    ParamReader(std::string id, const Params& given, std::initializer_list<std::string> allowed)
        : id_(std::move(id)), given_(given)
    {
        std::set<std::string> ok(allowed);
        for (const auto& [key, value] : given_) {
            if (!ok.count(key))
                throw DomainError(id_ + ": unknown parameter '" + key + "'");
            if (!std::isfinite(value))
                throw DomainError(id_ + ": parameter '" + key + "' is not finite");
        }
    }

    double positive(const std::string& key, double fallback) const
    {
        double v = get(key, fallback);
        if (!(v > 0.0))
            throw DomainError(id_ + ": parameter '" + key + "' must be positive");
        return v;
    }

    double get(const std::string& key, double fallback) const
    {
        auto it = given_.find(key);
        return it == given_.end() ? fallback : it->second;
    }

    bool has(const std::string& key) const { return given_.count(key) != 0; }

  private:
    std::string id_;
    const Params& given_;
};

int integer_param(const std::string& id, const std::string& key, double v, int min)
{
    if (std::floor(v) != v || v < min)
        throw DomainError(id + ": parameter '" + key + "' must be an integer >= " + std::to_string(min));
    return static_cast<int>(v);
}

double unit_ball_volume(int d)
{
    return std::exp(0.5 * d * std::log(pi) - std::lgamma(0.5 * d + 1.0));
}

// ---------------------------------------------------------------------------
// Shape formulas shared by the n-parameter classes and the scaled families.
// Each returns {volume, area} for a coordinate vector.

Measures triangle_ravi(std::span<const double> x)
{
    // Sides y+z, z+x, x+y; Heron's s - a = x etc.
    double p = x[0] + x[1] + x[2];
    return {std::sqrt(p * x[0] * x[1] * x[2]), 2.0 * p};
}

Measures right_triangle(std::span<const double> x)
{
    return {0.5 * x[0] * x[1], x[0] + x[1] + std::hypot(x[0], x[1])};
}

Measures box3(std::span<const double> x)
{
    double a = x[0], b = x[1], c = x[2];
    return {a * b * c, 2.0 * (a * b + b * c + c * a)};
}

Measures cylinder(std::span<const double> x)
{
    double rho = x[0], h = x[1];
    return {pi * rho * rho * h, 2.0 * pi * rho * rho + 2.0 * pi * rho * h};
}

Measures cone(std::span<const double> x)
{
    double rho = x[0], h = x[1];
    return {pi / 3.0 * rho * rho * h, pi * rho * rho + pi * rho * std::hypot(rho, h)};
}

Measures square_pyramid(std::span<const double> x)
{
    double a = x[0], h = x[1];
    return {a * a * h / 3.0, a * a + 2.0 * a * std::sqrt(h * h + 0.25 * a * a)};
}

// Tube radius rho1, center radius rho1 + gap.
Measures ring_torus(std::span<const double> x)
{
    double rho1 = x[0], rho2 = x[0] + x[1];
    return {2.0 * pi * pi * rho1 * rho1 * rho2, 4.0 * pi * pi * rho1 * rho2};
}

Measures parallelogram(std::span<const double> x)
{
    return {x[0] * x[1] * std::sin(x[2]), 2.0 * x[0] + 2.0 * x[1]};
}

Measures rectangle(std::span<const double> x)
{
    return {x[0] * x[1], 2.0 * x[0] + 2.0 * x[1]};
}

// Star-shaped n-gon around the origin: radii rho_i, angular gaps
// 2 pi w_i / sum(w) with w_i in (1, 2), so every gap is below pi.
Measures polar_ngon(std::span<const double> x, int n)
{
    double wsum = 0.0;
    for (int i = 0; i < n; ++i)
        wsum += x[n + i];
    double area = 0.0;
    double perimeter = 0.0;
    for (int i = 0; i < n; ++i) {
        double r0 = x[i];
        double r1 = x[(i + 1) % n];
        double gap = 2.0 * pi * x[n + i] / wsum;
        area += 0.5 * r0 * r1 * std::sin(gap);
        perimeter += std::sqrt(std::max(0.0, r0 * r0 + r1 * r1 - 2.0 * r0 * r1 * std::cos(gap)));
    }
    return {area, perimeter};
}

NParamFamilySpec make_class(std::string id, int d, std::vector<Interval> box,
                            std::function<Measures(std::span<const double>)> shape, int m,
                            Params params = {})
{
    NParamFamilySpec c;
    c.id = std::move(id);
    c.dimension = d;
    c.domain = std::move(box);
    c.params = std::move(params);
    c.volume = [shape](std::span<const double> x) { return shape(x).volume; };
    c.area = [shape](std::span<const double> x) { return shape(x).area; };
    c.homogeneous_prefix_m = m;
    return c;
}

// s * (fixed shape): V = V0 s^d, A = A0 s^(d-1).
FamilySpec scaled_family(std::string id, int d, Measures base, Params params)
{
    double v0 = base.volume;
    double a0 = base.area;
    if (!(v0 > 0.0 && a0 > 0.0 && std::isfinite(v0) && std::isfinite(a0)))
        throw DomainError(id + ": shape parameters give a degenerate region");
    return make_family(
        std::move(id), d, Interval{0.0, kInf}, [v0, d](double s) { return v0 * std::pow(s, d); },
        [a0, d](double s) { return a0 * std::pow(s, d - 1); },
        [v0, d](double s) { return d * v0 * std::pow(s, d - 1); }, std::move(params));
}

const std::vector<std::string>& family_ids()
{
    static const std::vector<std::string> ids = {
        "cube",     "rect_fixed_length", "rect_similar",   "rhombus",    "hexagon_120",
        "ngon",     "ball",              "box3",           "cylinder",   "cone",
        "square_pyramid", "ring_torus",  "triangle_sides", "right_triangle"};
    return ids;
}

const std::vector<std::string>& class_ids()
{
    static const std::vector<std::string> ids = {
        "triangle_sides", "right_triangle", "ngon",       "box3",           "cylinder",
        "cone",           "square_pyramid", "ring_torus", "parallelogram3", "rectangle2"};
    return ids;
}

}  // namespace

std::vector<double> interior_samples(const Interval& I, std::size_t n)
{
    if (!(I.lo < I.hi))
        throw DomainError("interior_samples: empty interval " + describe(I));
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i + 1) / static_cast<double>(n + 1);
        double s;
        if (I.bounded())
            s = I.lo + (I.hi - I.lo) * t;
        else if (I.lo > -kInf)
            s = I.lo + t / (1.0 - t);
        else if (I.hi < kInf)
            s = I.hi - (1.0 - t) / t;
        else
            s = std::tan(pi * (t - 0.5));
        out.push_back(s);
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.back() = hi;
    return out;
}

Measures FamilySpec::eval(double s) const
{
    if (!domain.contains(s)) {
        std::ostringstream os;
        os << id << ": s = " << s << " outside " << describe(domain);
        throw DomainError(os.str());
    }
    return {volume(s), area(s)};
}

bool NParamFamilySpec::contains(std::span<const double> x) const noexcept
{
    if (x.size() != domain.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!domain[i].contains(x[i]))
            return false;
    return true;
}

Measures NParamFamilySpec::eval(std::span<const double> x) const
{
    if (x.size() != domain.size())
        throw DomainError(id + ": expected " + std::to_string(domain.size()) + " coordinates, got " +
                          std::to_string(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!domain[i].contains(x[i])) {
            std::ostringstream os;
            os << id << ": x" << (i + 1) << " = " << x[i] << " outside " << describe(domain[i]);
            throw DomainError(os.str());
        }
    }
    return {volume(x), area(x)};
}

FamilySpec make_family(std::string id, int dimension, Interval domain, ScalarFn volume, ScalarFn area,
                       ScalarFn volume_derivative, Params params)
{
    if (dimension < 2)
        throw DomainError(id + ": dimension must be >= 2");
    if (!(domain.lo < domain.hi))
        throw DomainError(id + ": empty parameter interval " + describe(domain));
    if (!volume || !area)
        throw DomainError(id + ": volume and area evaluators are required");
    FamilySpec f;
    f.id = std::move(id);
    f.dimension = dimension;
    f.domain = domain;
    f.params = std::move(params);
    f.volume = std::move(volume);
    f.area = std::move(area);
    f.volume_derivative = std::move(volume_derivative);
    return f;
}

Params builtin_default_params(const std::string& id)
{
    if (id == "rect_fixed_length")
        return {{"a", 1.0}};
    if (id == "rect_similar")
        return {{"k", 0.5}};
    if (id == "rhombus")
        return {{"a", 1.0}};
    if (id == "ngon")
        return {{"n", 6.0}};
    if (id == "ball")
        return {{"d", 3.0}};
    if (id == "box3")
        return {{"a", 1.0}, {"b", 2.0}, {"c", 3.0}};
    if (id == "cylinder" || id == "cone")
        return {{"rho", 1.0}, {"h", 3.0}};
    if (id == "square_pyramid")
        return {{"a", 1.0}, {"h", 1.0}};
    if (id == "ring_torus")
        return {{"rho1", 1.0}, {"rho2", 2.0}};
    if (id == "triangle_sides")
        return {{"a", 3.0}, {"b", 4.0}, {"c", 5.0}};
    if (id == "right_triangle")
        return {{"a", 1.0}, {"b", 2.0}};
    return {};
}

FamilySpec builtin_family(const std::string& id, const Params& params)
{
    if (id == "cube") {
        ParamReader p(id, params, {});
        return make_family(
            id, 3, {0.0, kInf}, [](double s) { return s * s * s; }, [](double s) { return 6.0 * s * s; },
            [](double s) { return 3.0 * s * s; });
    }
    if (id == "rect_fixed_length") {
        ParamReader p(id, params, {"a"});
        double a = p.positive("a", 1.0);
        return make_family(
            id, 2, {0.0, kInf}, [a](double s) { return a * s; }, [a](double s) { return 2.0 * s + 2.0 * a; },
            [a](double) { return a; }, {{"a", a}});
    }
    if (id == "rect_similar") {
        ParamReader p(id, params, {"k"});
        double k = p.get("k", 0.5);
        if (!(k > 0.0 && k < 1.0))
            throw DomainError("rect_similar: k must lie in (0, 1)");
        return make_family(
            id, 2, {0.0, kInf}, [k](double s) { return k * s * s; },
            [k](double s) { return 2.0 * s + 2.0 * k * s; }, [k](double s) { return 2.0 * k * s; },
            {{"k", k}});
    }
    if (id == "rhombus") {
        ParamReader p(id, params, {"a", "branch"});
        double a = p.positive("a", 1.0);
        if (!p.has("branch"))
            throw DomainError("rhombus: a branch selector is required (branch=0 for (0, sqrt2 a), "
                              "branch=1 for (sqrt2 a, 2a))");
        double b = p.get("branch", 0.0);
        if (b != 0.0 && b != 1.0)
            throw DomainError("rhombus: branch must be 0 or 1");
        return rhombus_branches(a)[static_cast<std::size_t>(b)];
    }
    if (id == "hexagon_120") {
        ParamReader p(id, params, {});
        // Sides 1, s^2, (s+1)^2 repeated; all inner angles 2 pi / 3.
        auto area = [](double s) {
            double b = s * s, c = (s + 1.0) * (s + 1.0);
            return std::sqrt(3.0) / 2.0 * (b + b * c + c);
        };
        auto perimeter = [](double s) { return 2.0 * (1.0 + s * s + (s + 1.0) * (s + 1.0)); };
        auto darea = [](double s) {
            double b = s * s, c = (s + 1.0) * (s + 1.0);
            return std::sqrt(3.0) / 2.0 * (2.0 * s * (1.0 + c) + 2.0 * (s + 1.0) * (1.0 + b));
        };
        return make_family(id, 2, {0.0, kInf}, area, perimeter, darea);
    }
    if (id == "ngon") {
        ParamReader p(id, params, {"n"});
        int n = integer_param(id, "n", p.get("n", 6.0), 3);
        double sa = std::sin(2.0 * pi / n);
        double sp = std::sin(pi / n);
        // s is the circumradius.
        return make_family(
            id, 2, {0.0, kInf}, [n, sa](double s) { return 0.5 * n * s * s * sa; },
            [n, sp](double s) { return 2.0 * n * s * sp; }, [n, sa](double s) { return n * s * sa; },
            {{"n", static_cast<double>(n)}});
    }
    if (id == "ball") {
        ParamReader p(id, params, {"d"});
        int d = integer_param(id, "d", p.get("d", 3.0), 2);
        double kappa = unit_ball_volume(d);
        return make_family(
            id, d, {0.0, kInf}, [d, kappa](double s) { return kappa * std::pow(s, d); },
            [d, kappa](double s) { return d * kappa * std::pow(s, d - 1); },
            [d, kappa](double s) { return d * kappa * std::pow(s, d - 1); }, {{"d", static_cast<double>(d)}});
    }
    if (id == "box3") {
        ParamReader p(id, params, {"a", "b", "c"});
        std::array<double, 3> x{p.positive("a", 1.0), p.positive("b", 2.0), p.positive("c", 3.0)};
        return scaled_family(id, 3, box3(x), {{"a", x[0]}, {"b", x[1]}, {"c", x[2]}});
    }
    if (id == "cylinder" || id == "cone") {
        ParamReader p(id, params, {"rho", "h"});
        std::array<double, 2> x{p.positive("rho", 1.0), p.positive("h", 3.0)};
        return scaled_family(id, 3, id == "cone" ? cone(x) : cylinder(x), {{"rho", x[0]}, {"h", x[1]}});
    }
    if (id == "square_pyramid") {
        ParamReader p(id, params, {"a", "h"});
        std::array<double, 2> x{p.positive("a", 1.0), p.positive("h", 1.0)};
        return scaled_family(id, 3, square_pyramid(x), {{"a", x[0]}, {"h", x[1]}});
    }
    if (id == "ring_torus") {
        ParamReader p(id, params, {"rho1", "rho2"});
        double rho1 = p.positive("rho1", 1.0);
        double rho2 = p.positive("rho2", 2.0);
        if (!(rho2 > rho1))
            throw DomainError("ring_torus: center radius rho2 must exceed tube radius rho1");
        std::array<double, 2> x{rho1, rho2 - rho1};
        return scaled_family(id, 3, ring_torus(x), {{"rho1", rho1}, {"rho2", rho2}});
    }
    if (id == "triangle_sides") {
        ParamReader p(id, params, {"a", "b", "c"});
        double a = p.positive("a", 3.0), b = p.positive("b", 4.0), c = p.positive("c", 5.0);
        std::array<double, 3> x{0.5 * (b + c - a), 0.5 * (c + a - b), 0.5 * (a + b - c)};
        if (!(x[0] > 0.0 && x[1] > 0.0 && x[2] > 0.0))
            throw DomainError("triangle_sides: sides violate the strict triangle inequality");
        return scaled_family(id, 2, triangle_ravi(x), {{"a", a}, {"b", b}, {"c", c}});
    }
    if (id == "right_triangle") {
        ParamReader p(id, params, {"a", "b"});
        std::array<double, 2> x{p.positive("a", 1.0), p.positive("b", 2.0)};
        return scaled_family(id, 2, right_triangle(x), {{"a", x[0]}, {"b", x[1]}});
    }
    throw DomainError("unknown family id '" + id + "'");
}

std::array<FamilySpec, 2> rhombus_branches(double a)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("rhombus: side a must be positive");
    // Side a fixed, diagonal s in (0, 2a).
    auto area = [a](double s) { return s * std::sqrt(a * a - 0.25 * s * s); };
    auto perimeter = [a](double) { return 4.0 * a; };
    auto darea = [a](double s) {
        double q = std::sqrt(a * a - 0.25 * s * s);
        return q - 0.25 * s * s / q;
    };
    double mid = std::sqrt(2.0) * a;
    return {make_family("rhombus", 2, {0.0, mid}, area, perimeter, darea, {{"a", a}, {"branch", 0.0}}),
            make_family("rhombus", 2, {mid, 2.0 * a}, area, perimeter, darea, {{"a", a}, {"branch", 1.0}})};
}

NParamFamilySpec builtin_class(const std::string& id, const Params& params)
{
    const Interval pos{0.0, kInf};
    if (id == "triangle_sides") {
        ParamReader p(id, params, {});
        return make_class(id, 2, {pos, pos, pos}, triangle_ravi, 3);
    }
    if (id == "right_triangle") {
        ParamReader p(id, params, {});
        return make_class(id, 2, {pos, pos}, right_triangle, 2);
    }
    if (id == "ngon") {
        ParamReader p(id, params, {"n"});
        int n = integer_param(id, "n", p.get("n", 6.0), 3);
        std::vector<Interval> box(static_cast<std::size_t>(n), pos);
        box.insert(box.end(), static_cast<std::size_t>(n), Interval{1.0, 2.0});
        return make_class(
            id, 2, std::move(box), [n](std::span<const double> x) { return polar_ngon(x, n); }, n,
            {{"n", static_cast<double>(n)}});
    }
    if (id == "box3") {
        ParamReader p(id, params, {});
        return make_class(id, 3, {pos, pos, pos}, box3, 3);
    }
    if (id == "cylinder") {
        ParamReader p(id, params, {});
        return make_class(id, 3, {pos, pos}, cylinder, 2);
    }
    if (id == "cone") {
        ParamReader p(id, params, {});
        return make_class(id, 3, {pos, pos}, cone, 2);
    }
    if (id == "square_pyramid") {
        ParamReader p(id, params, {});
        return make_class(id, 3, {pos, pos}, square_pyramid, 2);
    }
    if (id == "ring_torus") {
        ParamReader p(id, params, {});
        return make_class(id, 3, {pos, pos}, ring_torus, 2);
    }
    if (id == "parallelogram3") {
        ParamReader p(id, params, {});
        return make_class(id, 2, {pos, pos, Interval{0.0, pi}}, parallelogram, 2);
    }
    if (id == "rectangle2") {
        ParamReader p(id, params, {});
        return make_class(id, 2, {pos, pos}, rectangle, 2);
    }
    throw DomainError("unknown class id '" + id + "'");
}

std::variant<FamilySpec, NParamFamilySpec> builtin(const std::string& id, const Params& params)
{
    const auto& f = family_ids();
    if (std::find(f.begin(), f.end(), id) != f.end())
        return builtin_family(id, params);
    return builtin_class(id, params);
}

std::vector<std::string> builtin_family_ids() { return family_ids(); }
std::vector<std::string> builtin_class_ids() { return class_ids(); }

FamilyRegistry FamilyRegistry::with_builtins()
{
    FamilyRegistry reg;
    for (const auto& id : family_ids()) {
        if (id == "rhombus") {
            auto [inc, dec] = rhombus_branches(1.0);
            inc.id = "rhombus_inc";
            dec.id = "rhombus_dec";
            reg.add(std::move(inc));
            reg.add(std::move(dec));
            continue;
        }
        reg.add(builtin_family(id, builtin_default_params(id)));
    }
    return reg;
}

void FamilyRegistry::add(FamilySpec family)
{
    if (family.id.empty())
        throw DomainError("registry: family id must not be empty");
    if (families_.count(family.id))
        throw DomainError("registry: duplicate family id '" + family.id + "'");
    std::string key = family.id;
    families_.emplace(std::move(key), std::move(family));
}

bool FamilyRegistry::contains(const std::string& id) const { return families_.count(id) != 0; }

const FamilySpec& FamilyRegistry::get(const std::string& id) const
{
    auto it = families_.find(id);
    if (it == families_.end())
        throw DomainError("registry: unknown family id '" + id + "'");
    return it->second;
}

std::vector<std::string> FamilyRegistry::ids() const
{
    std::vector<std::string> out;
    out.reserve(families_.size());
    for (const auto& [id, f] : families_)
        out.push_back(id);
    return out;
}

}  // namespace isolab
