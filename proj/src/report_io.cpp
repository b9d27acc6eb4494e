#include "isolab/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "isolab/error.hpp"

namespace isolab {
namespace {

Json number(double x)
{
    if (!std::isfinite(x))
        return nullptr;
    return x;
}

Json numbers(const std::vector<double>& xs)
{
    Json a = Json::array();
    for (double x : xs)
        a.push_back(number(x));
    return a;
}

void emit(std::string& out, const Json& j)
{
    switch (j.type()) {
    case Json::value_t::null:
        out += "null";
        break;
    case Json::value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        break;
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
        out += j.dump();
        break;
    case Json::value_t::number_float:
        out += format_number(j.get<double>());
        break;
    case Json::value_t::string:
        out += j.dump();
        break;
    case Json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first)
                out += ',';
            first = false;
            emit(out, e);
        }
        out += ']';
        break;
    }
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first)
                out += ',';
            first = false;
            out += Json(k).dump();
            out += ':';
            emit(out, v);
        }
        out += '}';
        break;
    }
    default:
        out += j.dump();
    }
}

std::string verdict_name(Verdict v) { return to_string(v); }

}  // namespace

std::string format_number(double x)
{
    if (!std::isfinite(x))
        return "null";
    if (x == 0.0)
        return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_csv_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump(const Json& j)
{
    std::string out;
    emit(out, j);
    return out;
}

Json to_json(const Interval& I) { return Json::array({number(I.lo), number(I.hi)}); }

Json to_json(const Params& p)
{
    Json o = Json::object();
    for (const auto& [k, v] : p)
        o[k] = number(v);
    return o;
}

Json catalog_entry(const FamilySpec& f)
{
    return {{"id", f.id}, {"dimension", f.dimension}, {"domain", to_json(f.domain)}, {"params", to_json(f.params)}};
}

Json catalog_entry(const NParamFamilySpec& c)
{
    Json domain = Json::array();
    for (const auto& I : c.domain)
        domain.push_back(to_json(I));
    Json j = {{"id", c.id}, {"dimension", c.dimension}, {"domain", domain}, {"params", to_json(c.params)}};
    j["homogeneous_prefix_m"] = c.homogeneous_prefix_m ? Json(*c.homogeneous_prefix_m) : Json(nullptr);
    return j;
}

Json to_json(const InradiusCurve& c)
{
    Json samples = Json::array();
    for (const auto& p : c.samples)
        samples.push_back({{"s", number(p.s)}, {"r", number(p.r)}});
    return {{"family", c.family_id},
            {"anchor_s0", number(c.anchor_s0)},
            {"anchor_C", number(c.anchor_value_C)},
            {"quadrature_error_estimate", number(c.quadrature_error_estimate)},
            {"samples", samples}};
}

Json to_json(const DerivativeRelationReport& r)
{
    return {{"passed", r.passed},       {"max_rel_deviation", number(r.max_rel_deviation)},
            {"rtol", number(r.rtol)},   {"s", numbers(r.s)},
            {"dv_dr", numbers(r.dv_dr)}, {"area", numbers(r.area)},
            {"rel_deviation", numbers(r.rel_deviation)}};
}

Json to_json(const HomogeneityReport& r)
{
    auto criterion = [](double res, double tol) {
        return Json{{"residual", number(res)}, {"tolerance", number(tol)}, {"passed", res <= tol}};
    };
    return {{"family", r.family_id},
            {"dimension", r.dimension},
            {"verdict", verdict_name(r.verdict)},
            {"k_constant", number(r.k_constant)},
            {"floor", number(r.floor)},
            {"q_center", number(r.q_center)},
            {"q_min", number(r.q_min)},
            {"q_rel_spread", number(r.q_rel_spread)},
            {"rtol", number(r.rtol)},
            {"criteria_agree", r.criteria_agree()},
            {"criterion_i", criterion(r.criterion_i_residual, r.criterion_i_tolerance)},
            {"criterion_ii", criterion(r.criterion_ii_residual, r.criterion_ii_tolerance)},
            {"criterion_iii", criterion(r.criterion_iii_residual, r.criterion_iii_tolerance)},
            {"fitted_offset", number(r.fitted_offset)},
            {"grid", numbers(r.grid)},
            {"q", numbers(r.q_values)}};
}

Json to_json(const KminResult& r)
{
    Json boundary = Json::array();
    for (const auto& b : r.boundary)
        boundary.push_back({{"coordinate", b.coordinate + 1}, {"limit", b.lower ? "lower" : "upper"}});
    return {{"class", r.class_id},
            {"dimension", r.dimension},
            {"kmin", number(r.kmin)},
            {"attained", r.attained},
            {"argmin", numbers(r.argmin)},
            {"boundary", boundary},
            {"floor", number(r.floor)},
            {"multistart_count", r.multistart_count},
            {"evaluations", r.evaluations}};
}

Json to_json(const std::vector<KminRow>& rows)
{
    Json out = Json::array();
    for (const auto& r : rows) {
        Json j = {{"class", r.class_id},
                  {"label", r.label},
                  {"analytic", number(r.analytic)},
                  {"computed", number(r.computed)},
                  {"rel_error", number(r.rel_error)},
                  {"tolerance", number(r.tolerance)},
                  {"attained", r.attained},
                  {"expected_attained", r.expected_attained},
                  {"ok", r.ok}};
        if (!r.error.empty())
            j["error"] = r.error;
        out.push_back(std::move(j));
    }
    return out;
}

Json to_json(const LevelSetCurve& c)
{
    Json pts = Json::array();
    for (const auto& p : c.points)
        pts.push_back({{"s", number(p.s)}, {"x", numbers(p.x)}, {"Q", number(p.q)}, {"residual", number(p.residual)}});
    return {{"class", c.class_id},
            {"k", number(c.k)},
            {"stop_reason", c.stop_reason},
            {"max_residual", number(c.max_residual())},
            {"points", pts}};
}

Json to_json(const PyramidDecomposition& d, const MeanAltitudes& m)
{
    Json facets = Json::array();
    for (const auto& f : d.facets)
        facets.push_back({{"A_i", number(f.area)}, {"r_i", number(f.altitude)}, {"V_i", number(f.volume)}});
    return {{"dimension", d.dimension},
            {"V", number(d.volume)},
            {"A", number(d.area)},
            {"r_tong", number(m.tong)},
            {"arithmetic_mean", number(m.arithmetic)},
            {"harmonic_mean", number(m.harmonic)},
            {"facets", facets}};
}

Json to_json(const InequalityReport& r)
{
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"name", row.name},
                        {"lhs", number(row.lhs)},
                        {"rhs", number(row.rhs)},
                        {"slack", number(row.slack)},
                        {"holds", row.holds}});
    return {{"dimension", r.dimension},
            {"V", number(r.volume)},
            {"A", number(r.area)},
            {"r", number(r.r)},
            {"kappa_d", number(r.kappa_d)},
            {"deficit", number(r.deficit)},
            {"deficit_identity_residual", number(r.deficit_identity_residual)},
            {"all_hold", r.all_hold()},
            {"rows", rows}};
}

Json to_json(const SteinerBody& b)
{
    return {{"dimension", b.dimension},
            {"s", number(b.s)},
            {"V", number(b.volume)},
            {"A", number(b.area)},
            {"volume_coefficients", numbers(b.volume_coefficients)},
            {"area_coefficients", numbers(b.area_coefficients)},
            {"coefficient_residual", number(b.coefficient_residual)},
            {"fd_residual", number(steiner_fd_residual(b))}};
}

void write_csv(std::ostream& out, const InradiusCurve& c)
{
    out << "s,r\n";
    for (const auto& p : c.samples)
        out << format_csv_number(p.s) << ',' << format_csv_number(p.r) << '\n';
}

void write_csv(std::ostream& out, const LevelSetCurve& c)
{
    const std::size_t n = c.points.empty() ? 0 : c.points.front().x.size();
    out << 's';
    for (std::size_t i = 0; i < n; ++i)
        out << ",x" << (i + 1);
    out << ",Q\n";
    for (const auto& p : c.points) {
        out << format_csv_number(p.s);
        for (double x : p.x)
            out << ',' << format_csv_number(x);
        out << ',' << format_csv_number(p.q) << '\n';
    }
}

StarPolyhedron parse_polyhedron(const std::string& text, bool require_apex)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("polyhedron: malformed JSON: ") + e.what());
    }
    auto point = [](const Json& v, const char* what) {
        if (!v.is_array() || v.size() < 2 || v.size() > 3)
            throw ValidationError(std::string("polyhedron: ") + what + " must be a list of 2 or 3 numbers");
        Point p{0.0, 0.0, 0.0};
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (!v[k].is_number())
                throw ValidationError(std::string("polyhedron: ") + what + " has a non-numeric coordinate");
            p[k] = v[k].get<double>();
        }
        return p;
    };
    StarPolyhedron p;
    try {
        if (!j.is_object())
            throw ValidationError("polyhedron: top level must be an object");
        if (!j.contains("dimension") || !j["dimension"].is_number_integer())
            throw ValidationError("polyhedron: integer \"dimension\" is required");
        p.dimension = j["dimension"].get<int>();
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw ValidationError("polyhedron: \"vertices\" list is required");
        for (const auto& v : j["vertices"])
            p.vertices.push_back(point(v, "vertex"));
        if (!j.contains("facets") || !j["facets"].is_array())
            throw ValidationError("polyhedron: \"facets\" list is required");
        for (const auto& f : j["facets"]) {
            if (!f.is_array())
                throw ValidationError("polyhedron: each facet must be a list of vertex indices");
            std::vector<std::size_t> idx;
            for (const auto& i : f) {
                if (!i.is_number_unsigned())
                    throw ValidationError("polyhedron: facet indices must be nonnegative integers");
                idx.push_back(i.get<std::size_t>());
            }
            p.facets.push_back(std::move(idx));
        }
        if (j.contains("apex"))
            p.apex = point(j["apex"], "apex");
        else if (require_apex)
            throw ValidationError("polyhedron: \"apex\" is required");
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("polyhedron: ") + e.what());
    }
    auto diags = validate(p, require_apex);
    if (!diags.empty())
        throw ValidationError("polyhedron failed validation", std::move(diags));
    return p;
}

}  // namespace isolab
