#pragma once

// JSON and CSV forms of the library's values.
//
// Elements of prime fields are integers; elements of extension fields are
// coefficient lists [c0, c1, ..., c_{k-1}]. Polynomials use
//     {"nvars": N, "terms": [{"e": [...], "c": <element>}, ...]}
// with terms in canonical (exponent-vector) order. Integers that may leave
// the 64-bit range are written as decimal strings.

#include <string>

#include "json.hpp"

#include "ffexpand/expansion.hpp"
#include "ffexpand/incidence.hpp"
#include "ffexpand/structure.hpp"

namespace ffx {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json element_to_json(const FieldCtx& f, Raw v);
/// Accepts an integer (reduced mod p) or a coefficient list. Throws InvalidArgument.
Raw element_from_json(const FieldCtx& f, const Json& j);

Json poly_to_json(const MvPoly& p);
MvPoly poly_from_json(const Json& j, const FieldPtr& field);

Json relation_to_json(const AnnihilatorRelation& r);
AnnihilatorRelation relation_from_json(const Json& j, const FieldPtr& field);
Json independence_to_json(const IndependenceCheck& c);
IndependenceCheck independence_from_json(const Json& j, const FieldPtr& field);
Json verdict_to_json(const NicenessVerdict& v);
Json classification_to_json(const FieldCtx& f, const QuadraticClassification& c);
Json scan_summary_to_json(const QuadraticScanSummary& s);

Json point_set_to_json(const PointSet& s);
PointSet point_set_from_json(const Json& j, const FieldPtr& field);
Json curve_family_to_json(const CurveFamily& c);
CurveFamily curve_family_from_json(const Json& j, const FieldPtr& field);
Json vinh_to_json(const VinhCheck& v);

Json report_to_json(const ExperimentReport& r);
/// Inverse of report_to_json; the field is rebuilt from r["field"].
ExperimentReport report_from_json(const Json& j);

std::string report_csv_header();
std::string report_csv_row(const ExperimentReport& r);

/// Copy of j with every "wall_time_ms" key removed, at any depth.
Json strip_wall_time(const Json& j);

}  // namespace ffx
