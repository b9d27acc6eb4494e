#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "isolab/calculus.hpp"
#include "isolab/error.hpp"
#include "isolab/families.hpp"
#include "isolab/homogeneity.hpp"
#include "isolab/hull.hpp"
#include "isolab/inequalities.hpp"
#include "isolab/kernels.hpp"
#include "isolab/polytope.hpp"
#include "isolab/report_io.hpp"
#include "isolab/search.hpp"

namespace isolab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Settings
{
    std::string family;
    std::string cls;
    std::vector<std::string> params;
    std::string grid;
    std::string format;
    std::string output;
    std::string expect;
    std::string file;
    std::string shape;
    std::string x;
    std::string start;
    std::string direction;
    std::string polygon;
    std::string box;
    std::string incenter;
    double s = kNaN;
    double s0 = kNaN;
    double C = kNaN;
    double rtol = 1e-8;
    double quad_tol = 1e-10;
    double tol = 1e-13;
    double k = kNaN;
    double step = 0.05;
    double r = kNaN;
    double previous = kNaN;
    double volume = kNaN;
    double area = kNaN;
    double perimeter = kNaN;
    double rho_scale = 1.0;
    int d = 0;
    int steps = 100;
    std::size_t coordinate = 0;
    std::size_t starts = 8;
    std::size_t random_vertices = 16;
    std::uint64_t seed = 0;
    bool random = false;
    bool two_d = false;
};

double parse_double(const std::string& text, const std::string& what)
{
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw UsageError(what + ": '" + text + "' is not a number");
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what, char sep = ',')
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(parse_double(item, what));
    if (out.empty())
        throw UsageError(what + ": empty list");
    return out;
}

Params parse_params(const std::vector<std::string>& kv)
{
    Params p;
    for (const auto& item : kv) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--param expects key=value, got '" + item + "'");
        p[item.substr(0, eq)] = parse_double(item.substr(eq + 1), "--param " + item.substr(0, eq));
    }
    return p;
}

std::vector<double> parse_grid(const std::string& spec, const Interval& domain)
{
    if (spec.empty())
        return interior_samples(domain, 64);
    auto parts = parse_list(spec, "--grid", ':');
    if (parts.size() != 3)
        throw UsageError("--grid expects lo:hi:n");
    const double n = parts[2];
    if (!(n >= 2) || n != std::floor(n))
        throw UsageError("--grid: n must be an integer >= 2");
    if (!(parts[0] < parts[1]))
        throw UsageError("--grid: lo must be below hi");
    return linspace(parts[0], parts[1], static_cast<std::size_t>(n));
}

Point parse_point(const std::string& text, const std::string& what)
{
    auto v = parse_list(text, what);
    if (v.size() < 2 || v.size() > 3)
        throw UsageError(what + ": expected 2 or 3 coordinates");
    return {v[0], v[1], v.size() == 3 ? v[2] : 0.0};
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FamilySpec family_of(const Settings& o)
{
    if (o.family.empty())
        throw UsageError("--family is required");
    return builtin_family(o.family, parse_params(o.params));
}

NParamFamilySpec class_of(const Settings& o)
{
    if (o.cls.empty())
        throw UsageError("--class is required");
    return builtin_class(o.cls, parse_params(o.params));
}

void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw UsageError(msg);
}

// Polyhedron from --file, --shape or --random.
StarPolyhedron polyhedron_of(const Settings& o, bool need_apex)
{
    const int sources = !o.file.empty() + !o.shape.empty() + o.random;
    require(sources == 1, "give exactly one of --file, --shape, --random");
    if (!o.file.empty())
        return parse_polyhedron(read_file(o.file), need_apex);
    if (o.random) {
        const auto h = random_convex_polytope(o.seed, o.random_vertices);
        return from_hull(h, random_interior_point(h.vertices, o.seed + 1));
    }
    if (o.shape == "cube")
        return box(2.0, 2.0, 2.0);
    if (o.shape == "tetrahedron")
        return regular_tetrahedron(1.0);
    if (o.shape == "square")
        return polygon({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {0.5, 0.5, 0.0});
    throw UsageError("--shape must be cube, tetrahedron or square");
}

struct Result
{
    std::string data;
    int code = exit_ok;
};

Result json_result(const Json& j, int code = exit_ok) { return {dump(j) + "\n", code}; }

Result cmd_families()
{
    Json fams = Json::array();
    for (const auto& id : builtin_family_ids()) {
        const auto params = builtin_default_params(id);
        if (id == "rhombus") {
            for (const auto& f : rhombus_branches(params.at("a")))
                fams.push_back(catalog_entry(f));
        } else {
            fams.push_back(catalog_entry(builtin_family(id, params)));
        }
    }
    Json classes = Json::array();
    for (const auto& id : builtin_class_ids())
        classes.push_back(catalog_entry(builtin_class(id, id == "ngon" ? Params{{"n", 6.0}} : Params{})));
    return json_result({{"families", fams}, {"classes", classes}});
}

Result cmd_eval(const Settings& o)
{
    Measures m{};
    int d = 0;
    if (!o.cls.empty()) {
        require(o.family.empty(), "give --family or --class, not both");
        require(!o.x.empty(), "--x is required with --class");
        const auto c = class_of(o);
        m = c.eval(parse_list(o.x, "--x"));
        d = c.dimension;
    } else {
        require(!std::isnan(o.s), "--s is required");
        const auto f = family_of(o);
        m = f.eval(o.s);
        d = f.dimension;
    }
    return json_result({{"V", m.volume},
                        {"A", m.area},
                        {"Q", isoperimetric_ratio(d, m.volume, m.area)},
                        {"r_tong", tong_inradius(d, m.volume, m.area)}});
}

Result cmd_inradius(const Settings& o)
{
    const auto f = family_of(o);
    const auto grid = parse_grid(o.grid, f.domain);
    QuadratureOptions q;
    q.abs_tol = q.rel_tol = o.quad_tol;
    const double s0 = std::isnan(o.s0) ? grid.front() : o.s0;
    const auto curve = std::isnan(o.C) ? tong_anchored_inradius(f, s0, grid, q)
                                        : inradius_by_quadrature(f, s0, o.C, grid, q);
    if (o.format == "csv") {
        std::ostringstream os;
        write_csv(os, curve);
        return {os.str()};
    }
    return json_result(to_json(curve));
}

Result cmd_classify(const Settings& o)
{
    const auto f = family_of(o);
    QuadratureOptions q;
    q.abs_tol = q.rel_tol = o.quad_tol;
    const auto rep = classify(f, parse_grid(o.grid, f.domain), o.rtol, Exec::parallel, q);
    int code = exit_ok;
    if (!o.expect.empty()) {
        require(o.expect == "homogeneous" || o.expect == "not_homogeneous",
                "--expect must be homogeneous or not_homogeneous");
        if (o.expect != to_string(rep.verdict))
            code = exit_check_failed;
    }
    return json_result(to_json(rep), code);
}

Result cmd_kmin(const Settings& o)
{
    return json_result(to_json(kmin(class_of(o), o.starts, o.tol, o.seed)));
}

Result cmd_kmin_table(const Settings& o)
{
    const auto rows = kmin_table(o.starts, o.seed);
    bool ok = true;
    for (const auto& r : rows)
        ok = ok && r.ok;
    return json_result(to_json(rows), ok ? exit_ok : exit_check_failed);
}

Result cmd_trace(const Settings& o)
{
    const auto c = class_of(o);
    require(!std::isnan(o.k), "--k is required");
    require(!o.start.empty(), "--start is required");
    TraceOptions t;
    if (!o.direction.empty())
        t.direction = parse_list(o.direction, "--direction");
    const auto curve = trace_level_set(c, o.k, parse_list(o.start, "--start"), o.steps, o.step, t);
    if (o.format == "json")
        return json_result(to_json(curve));
    std::ostringstream os;
    write_csv(os, curve);
    return {os.str()};
}

Result cmd_solve_coordinate(const Settings& o)
{
    const auto c = class_of(o);
    require(!std::isnan(o.k), "--k is required");
    require(!o.x.empty(), "--x is required");
    require(o.coordinate >= 1, "--coordinate is 1-based and required");
    const auto x = parse_list(o.x, "--x");
    const std::size_t j = o.coordinate - 1;
    CurveMap fixed = [x](double) { return x; };
    std::optional<double> prev;
    if (!std::isnan(o.previous))
        prev = o.previous;
    const double root = solve_coordinate(c, o.k, fixed, j, 0.0, prev);
    auto point = x;
    point[j] = root;
    return json_result({{"class", c.id},
                        {"k", o.k},
                        {"coordinate", o.coordinate},
                        {"root", root},
                        {"roots", coordinate_roots(c, o.k, x, j)},
                        {"x", point},
                        {"Q", class_ratio(c, point)}});
}

Result cmd_starlike(const Settings& o)
{
    const auto p = polyhedron_of(o, true);
    const auto dec = decompose(p);
    return json_result(to_json(dec, mean_altitudes(dec, p.dimension)));
}

Result cmd_support_volume(const Settings& o)
{
    const auto p = polyhedron_of(o, false);
    const double v = volume_from_support(p);
    Json j = {{"dimension", p.dimension}, {"V_support", v}};
    if (validate(p, true).empty()) {
        const double vd = decompose(p).volume;
        j["V_decomposition"] = vd;
        j["rel_difference"] = std::abs(v - vd) / vd;
    }
    return json_result(j);
}

Result cmd_cohen(const Settings& o)
{
    const auto p = polyhedron_of(o, false);
    Point c = p.apex;
    double r = o.r;
    if (o.shape == "cube") {
        c = {1.0, 1.0, 1.0};
        r = std::isnan(r) ? 1.0 : r;
    } else if (o.shape == "tetrahedron") {
        c = {0.0, 0.0, 0.0};
        r = std::isnan(r) ? 1.0 / (2.0 * std::sqrt(6.0)) : r;
    }
    if (!o.incenter.empty())
        c = parse_point(o.incenter, "--incenter");
    require(!std::isnan(r), "--r is required");
    const double residual = cohen_check(p, c, r);
    const bool ok = residual <= 1e-9;
    return json_result({{"r", r}, {"residual", residual}, {"passed", ok}}, ok ? exit_ok : exit_check_failed);
}

Result cmd_lift(const Settings& o)
{
    const auto base = family_of(o);
    require(o.rho_scale > 0.0, "--rho-scale must be positive");
    const double c = o.rho_scale;
    const auto lifted = lift_cylinder(
        base, [c](double s) { return c * s; }, [c](double) { return c; });
    const auto grid = parse_grid(o.grid, base.domain);
    Json rows = Json::array();
    double worst = 0.0;
    for (double s : grid) {
        const auto m = lifted.eval(s);
        const auto b = base.eval(s);
        const double r = tong_inradius(lifted.dimension, m.volume, m.area);
        std::vector<double> args(static_cast<std::size_t>(base.dimension),
                                 tong_inradius(base.dimension, b.volume, b.area));
        args.push_back(c * s);
        const double h = symmetric_harmonic_mean(args);
        worst = std::max(worst, std::abs(r - h) / h);
        rows.push_back({{"s", s}, {"V", m.volume}, {"A", m.area}, {"r_tong", r}, {"harmonic_mean", h}});
    }
    return json_result({{"family", lifted.id}, {"dimension", lifted.dimension}, {"max_rel_difference", worst},
                        {"rows", rows}});
}

Result cmd_steiner(const Settings& o)
{
    require(!std::isnan(o.s), "--s is required");
    require(o.polygon.empty() != o.box.empty(), "give exactly one of --polygon, --box");
    SteinerBody body;
    if (!o.box.empty()) {
        auto e = parse_list(o.box, "--box");
        require(e.size() == 3, "--box expects a,b,c");
        body = steiner_box(e[0], e[1], e[2], o.s);
    } else {
        std::vector<Point> poly;
        std::stringstream ss(o.polygon);
        std::string item;
        while (std::getline(ss, item, ';'))
            poly.push_back(parse_point(item, "--polygon"));
        body = steiner_polygon(poly, o.s);
    }
    return json_result(to_json(body));
}

Result cmd_bonnesen(const Settings& o)
{
    InequalityReport rep;
    if (o.two_d) {
        require(!std::isnan(o.perimeter) && !std::isnan(o.area) && !std::isnan(o.r), "--2d needs --P, --A and --r");
        rep = bonnesen_2d(o.perimeter, o.area, o.r);
    } else {
        require(o.d >= 2 && !std::isnan(o.volume) && !std::isnan(o.area), "--d, --V and --A are required");
        rep = bonnesen_general(o.d, o.volume, o.area);
    }
    return json_result(to_json(rep), rep.all_hold() ? exit_ok : exit_check_failed);
}

Result cmd_deficit(const Settings& o)
{
    require(o.d >= 2 && !std::isnan(o.volume) && !std::isnan(o.area), "--d, --V and --A are required");
    return json_result({{"d", o.d}, {"V", o.volume}, {"A", o.area}, {"deficit", deficit(o.d, o.volume, o.area)}});
}

void add_family(CLI::App* c, Settings& o)
{
    c->add_option("--family", o.family, "Family id");
    c->add_option("--param", o.params, "Family parameter key=value (repeatable)");
}

void add_class(CLI::App* c, Settings& o)
{
    c->add_option("--class", o.cls, "Class id");
    c->add_option("--param", o.params, "Class parameter key=value (repeatable)");
}

void add_polyhedron(CLI::App* c, Settings& o)
{
    c->add_option("--file", o.file, "Polyhedron JSON file");
    c->add_option("--shape", o.shape, "Built-in shape: cube, tetrahedron, square");
    c->add_flag("--random", o.random, "Seeded random convex polytope and interior apex");
    c->add_option("--vertices", o.random_vertices, "Points sampled for --random");
    c->add_option("--seed", o.seed, "Seed for --random");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Settings o;
    CLI::App app{"Isoperimetric ratios, Tong inradius and homogeneous families", "isolab"};
    app.require_subcommand(1, 1);
    app.add_option("--output,-o", o.output, "Write data here instead of standard output");

    auto* families = app.add_subcommand("families", "Catalog of built-in families and classes");
    auto* eval = app.add_subcommand("eval", "V, A, Q and r = dV/A at one parameter value");
    add_family(eval, o);
    eval->add_option("--class", o.cls, "Class id (with --x)");
    eval->add_option("--s", o.s, "Parameter value");
    eval->add_option("--x", o.x, "Class point x1,...,xn");

    auto* inradius = app.add_subcommand("inradius", "Quadrature inradius r(s) on a grid");
    add_family(inradius, o);
    inradius->add_option("--grid", o.grid, "lo:hi:n");
    inradius->add_option("--s0", o.s0, "Anchor (default: first grid point)");
    inradius->add_option("--C", o.C, "Anchor value (default: the Tong value at s0)");
    inradius->add_option("--quad-tol", o.quad_tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    inradius->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* classify_cmd = app.add_subcommand("classify", "Homogeneity verdict and cross-checks");
    add_family(classify_cmd, o);
    classify_cmd->add_option("--grid", o.grid, "lo:hi:n (default: 64 interior points)");
    classify_cmd->add_option("--rtol", o.rtol, "Relative spread tolerance")->check(CLI::PositiveNumber);
    classify_cmd->add_option("--quad-tol", o.quad_tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    classify_cmd->add_option("--expect", o.expect, "homogeneous or not_homogeneous; exit 3 on mismatch");

    auto* kmin_cmd = app.add_subcommand("kmin", "Infimum of Q over a shape class");
    add_class(kmin_cmd, o);
    kmin_cmd->add_option("--starts", o.starts, "Multistart count (>= 8)");
    kmin_cmd->add_option("--tol", o.tol, "Relative f tolerance")->check(CLI::PositiveNumber);
    kmin_cmd->add_option("--seed", o.seed, "Seed");

    auto* table = app.add_subcommand("kmin-table", "Every class against its analytic infimum");
    table->add_option("--starts", o.starts, "Multistart count (>= 8)");
    table->add_option("--seed", o.seed, "Seed");

    auto* trace = app.add_subcommand("trace", "Continuation along Q(x) = k");
    add_class(trace, o);
    trace->add_option("--k", o.k, "Level");
    trace->add_option("--start", o.start, "Start point x1,...,xn");
    trace->add_option("--steps", o.steps, "Number of steps");
    trace->add_option("--step-size", o.step, "Initial arclength step")->check(CLI::PositiveNumber);
    trace->add_option("--direction", o.direction, "Initial direction d1,...,dn");
    trace->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));

    auto* solve = app.add_subcommand("solve-coordinate", "Solve Q(x) = k for one coordinate");
    add_class(solve, o);
    solve->add_option("--k", o.k, "Level");
    solve->add_option("--x", o.x, "Point; the solved coordinate's entry is ignored");
    solve->add_option("--coordinate", o.coordinate, "Coordinate to solve for (1-based)");
    solve->add_option("--previous", o.previous, "Prefer the root nearest this value");

    auto* starlike = app.add_subcommand("starlike", "Pyramid decomposition and mean altitudes");
    add_polyhedron(starlike, o);
    auto* support = app.add_subcommand("support-volume", "Volume through the support function");
    add_polyhedron(support, o);
    auto* cohen = app.add_subcommand("cohen", "V = (r/d) A for a circumscribing polytope");
    add_polyhedron(cohen, o);
    cohen->add_option("--incenter", o.incenter, "Incenter x,y[,z] (default: the apex)");
    cohen->add_option("--r", o.r, "Inradius");

    auto* lift = app.add_subcommand("lift", "Cylinder over a homogeneous family, rho(s) = c s");
    add_family(lift, o);
    lift->add_option("--rho-scale", o.rho_scale, "c in rho(s) = c s");
    lift->add_option("--grid", o.grid, "lo:hi:n");

    auto* steiner = app.add_subcommand("steiner", "Outer parallel body of a convex polygon or box");
    steiner->add_option("--polygon", o.polygon, "x,y;x,y;...");
    steiner->add_option("--box", o.box, "a,b,c");
    steiner->add_option("--s", o.s, "Offset distance");

    auto* bonnesen = app.add_subcommand("bonnesen", "Bonnesen-type inequalities");
    bonnesen->add_option("--d", o.d, "Dimension");
    bonnesen->add_option("--V", o.volume, "Volume (area in the plane)");
    bonnesen->add_option("--A", o.area, "Surface area (region area with --2d)");
    bonnesen->add_flag("--2d", o.two_d, "Classical planar form with an inscribed radius");
    bonnesen->add_option("--P", o.perimeter, "Perimeter (with --2d)");
    bonnesen->add_option("--r", o.r, "Inscribed circle radius (with --2d)");

    auto* deficit_cmd = app.add_subcommand("deficit", "A^d - d^d kappa_d V^(d-1)");
    deficit_cmd->add_option("--d", o.d, "Dimension");
    deficit_cmd->add_option("--V", o.volume, "Volume");
    deficit_cmd->add_option("--A", o.area, "Surface area");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    configure_threads_from_env();
    try {
        Result res;
        if (families->parsed())
            res = cmd_families();
        else if (eval->parsed())
            res = cmd_eval(o);
        else if (inradius->parsed())
            res = cmd_inradius(o);
        else if (classify_cmd->parsed())
            res = cmd_classify(o);
        else if (kmin_cmd->parsed())
            res = cmd_kmin(o);
        else if (table->parsed())
            res = cmd_kmin_table(o);
        else if (trace->parsed())
            res = cmd_trace(o);
        else if (solve->parsed())
            res = cmd_solve_coordinate(o);
        else if (starlike->parsed())
            res = cmd_starlike(o);
        else if (support->parsed())
            res = cmd_support_volume(o);
        else if (cohen->parsed())
            res = cmd_cohen(o);
        else if (lift->parsed())
            res = cmd_lift(o);
        else if (steiner->parsed())
            res = cmd_steiner(o);
        else if (bonnesen->parsed())
            res = cmd_bonnesen(o);
        else
            res = cmd_deficit(o);

        if (o.output.empty()) {
            out << res.data;
        } else {
            std::ofstream file(o.output);
            if (!file)
                throw UsageError("cannot write '" + o.output + "'");
            file << res.data;
        }
        if (res.code == exit_check_failed)
            err << "check failed\n";
        return res.code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& d : e.diagnostics())
            err << "  " << d << "\n";
        return exit_domain;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    }
}

}  // namespace isolab
