#pragma once

// JSON and CSV renderings of the library's reports. Numbers are written in
// shortest round-trip form; non-finite values become null.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "isolab/calculus.hpp"
#include "isolab/families.hpp"
#include "isolab/homogeneity.hpp"
#include "isolab/inequalities.hpp"
#include "isolab/polytope.hpp"
#include "isolab/search.hpp"

namespace isolab {

using Json = nlohmann::ordered_json;

/// Compact, deterministic serialization (8.0 prints as 8).
std::string dump(const Json& j);

/// Shortest round-trip decimal form of x ("null" when not finite).
std::string format_number(double x);

/// 17 significant digits, '.' decimal point.
std::string format_csv_number(double x);

Json to_json(const Interval& I);
Json to_json(const Params& p);
Json catalog_entry(const FamilySpec& f);
Json catalog_entry(const NParamFamilySpec& c);
Json to_json(const InradiusCurve& c);
Json to_json(const DerivativeRelationReport& r);
Json to_json(const HomogeneityReport& r);
Json to_json(const KminResult& r);
Json to_json(const std::vector<KminRow>& rows);
Json to_json(const LevelSetCurve& c);
Json to_json(const PyramidDecomposition& d, const MeanAltitudes& m);
Json to_json(const InequalityReport& r);
Json to_json(const SteinerBody& b);

void write_csv(std::ostream& out, const InradiusCurve& c);
void write_csv(std::ostream& out, const LevelSetCurve& c);

/// Polyhedron from `{"dimension", "vertices", "facets", "apex"}`; in 2D
/// vertices may have two coordinates. Throws ValidationError on malformed
/// input or when the polyhedron fails validation.
StarPolyhedron parse_polyhedron(const std::string& text, bool require_apex = true);

}  // namespace isolab
