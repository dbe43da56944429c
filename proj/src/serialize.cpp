#include "ffexpand/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "ffexpand/errors.hpp"

namespace ffx {
namespace {

using U128 = unsigned __int128;

Json big_to_json(U128 v) {
    if (v <= static_cast<U128>(INT64_MAX)) return static_cast<std::uint64_t>(v);
    return to_decimal(v);
}

Json signed_big_to_json(__int128 v) {
    if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
    const U128 mag = v < 0 ? static_cast<U128>(-(v + 1)) + 1 : static_cast<U128>(v);
    return (v < 0 ? "-" : "") + to_decimal(mag);
}

U128 big_from_json(const Json& j) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0) throw InvalidArgument("expected a non-negative integer");
        return static_cast<U128>(v);
    }
    if (j.is_string()) return parse_decimal(j.get<std::string>());
    throw InvalidArgument("expected an integer or a decimal string");
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing JSON member '") + key + "'");
    return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* key) {
    try {
        return member(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("JSON member '") + key + "' has the wrong type");
    }
}

std::string variable_label(std::size_t index, std::size_t nvars) { return variable_name(index, nvars); }

}  // namespace

Json element_to_json(const FieldCtx& f, Raw v) {
    if (f.is_prime_field()) return v;
    Json arr = Json::array();
    for (Raw c : f.coeffs(v)) arr.push_back(c);
    return arr;
}

Raw element_from_json(const FieldCtx& f, const Json& j) {
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? f.from_int(static_cast<std::int64_t>(j.get<std::uint64_t>() % f.characteristic()))
                                      : f.from_int(j.get<std::int64_t>());
    }
    if (j.is_array()) {
        std::vector<std::int64_t> coeffs;
        for (const auto& c : j) {
            if (!c.is_number_integer()) throw InvalidArgument("element coefficients must be integers");
            coeffs.push_back(c.get<std::int64_t>());
        }
        return f.from_coeffs(coeffs);
    }
    throw InvalidArgument("field element must be an integer or a coefficient list");
}

Json poly_to_json(const MvPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"e", e}, {"c", element_to_json(p.field(), c)}});
    return Json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

MvPoly poly_from_json(const Json& j, const FieldPtr& field) {
    const auto nvars = get_as<std::size_t>(j, "nvars");
    if (nvars < 1) throw InvalidArgument("polynomial needs at least one variable");
    MvPoly p(field, nvars);
    for (const auto& t : member(j, "terms")) {
        const auto e = get_as<Exponents>(t, "e");
        if (e.size() != nvars) throw InvalidArgument("term exponent vector has the wrong length");
        p.add_term(e, element_from_json(*field, member(t, "c")));
    }
    return p;
}

Json relation_to_json(const AnnihilatorRelation& r) {
    Json polys = Json::array();
    for (const auto& p : r.polys) polys.push_back(poly_to_json(p));
    return Json{{"relation", poly_to_json(r.relation)},
                {"relation_text", r.relation.to_string()},
                {"degree", r.degree()},
                {"polys", std::move(polys)}};
}

AnnihilatorRelation relation_from_json(const Json& j, const FieldPtr& field) {
    AnnihilatorRelation r{{}, poly_from_json(member(j, "relation"), field)};
    for (const auto& p : member(j, "polys")) r.polys.push_back(poly_from_json(p, field));
    return r;
}

Json independence_to_json(const IndependenceCheck& c) {
    Json j{{"outcome", to_string(c.outcome)}, {"bound_used", c.bound_used}};
    if (c.jacobian) {
        j["jacobian"] = Json{{"determinant", poly_to_json(c.jacobian->determinant)},
                             {"determinant_text", c.jacobian->determinant.to_string()},
                             {"columns", c.jacobian->columns}};
    } else {
        j["jacobian"] = nullptr;
    }
    j["relation"] = c.relation ? relation_to_json(*c.relation) : Json(nullptr);
    return j;
}

IndependenceCheck independence_from_json(const Json& j, const FieldPtr& field) {
    IndependenceCheck c;
    const auto outcome = get_as<std::string>(j, "outcome");
    if (outcome == "independent") {
        c.outcome = Independence::Independent;
    } else if (outcome == "dependent") {
        c.outcome = Independence::Dependent;
    } else if (outcome == "unknown") {
        c.outcome = Independence::Unknown;
    } else {
        throw InvalidArgument("unknown independence outcome '" + outcome + "'");
    }
    c.bound_used = get_as<int>(j, "bound_used");
    const Json& jac = member(j, "jacobian");
    if (!jac.is_null()) {
        c.jacobian = JacobianWitness{poly_from_json(member(jac, "determinant"), field),
                                     get_as<std::vector<std::size_t>>(jac, "columns")};
    }
    const Json& rel = member(j, "relation");
    if (!rel.is_null()) c.relation = relation_from_json(rel, field);
    return c;
}

Json verdict_to_json(const NicenessVerdict& v) {
    Json checks = Json::array();
    std::size_t nvars = 0;
    for (const auto& dc : v.checks) {
        nvars = dc.decomposition.nvars;
        Json parts = Json::array();
        for (const auto& p : dc.decomposition.parts) parts.push_back(poly_to_json(p));
        const FieldCtx& f = dc.decomposition.parts.empty() ? dc.decomposition.leading.ctx()
                                                           : dc.decomposition.parts[0].field();
        checks.push_back(Json{{"variable", dc.variable},
                              {"variable_name", variable_label(dc.variable, dc.decomposition.nvars)},
                              {"leading", element_to_json(f, dc.decomposition.leading.raw())},
                              {"parts", std::move(parts)},
                              {"independence", independence_to_json(dc.check)}});
    }
    Json j{{"status", to_string(v.status)}, {"degree", v.degree}};
    if (v.distinguished) {
        j["distinguished"] = *v.distinguished;
        j["distinguished_name"] = variable_label(*v.distinguished, nvars);
    } else {
        j["distinguished"] = nullptr;
        j["distinguished_name"] = nullptr;
    }
    j["bound_used"] = v.bound_used;
    j["checks"] = std::move(checks);
    return j;
}

Json classification_to_json(const FieldCtx& f, const QuadraticClassification& c) {
    Json j{{"nice", c.nice}, {"reason", to_string(c.reason)}};
    j["absent_variable"] = c.absent_variable ? Json(variable_label(*c.absent_variable, 3)) : Json(nullptr);
    if (c.square) {
        Json linear = Json::array();
        for (const auto& d : c.square->linear) linear.push_back(element_to_json(f, d.raw()));
        j["square"] = Json{{"e", element_to_json(f, c.square->e.raw())},
                           {"u", element_to_json(f, c.square->u.raw())},
                           {"v", element_to_json(f, c.square->v.raw())},
                           {"linear", std::move(linear)}};
    } else {
        j["square"] = nullptr;
    }
    return j;
}

Json scan_summary_to_json(const QuadraticScanSummary& s) {
    return Json{{"scanned", s.scanned},
                {"skipped_low_degree", s.skipped_low_degree},
                {"classified_nice", s.classified_nice},
                {"classified_not_nice", s.classified_not_nice},
                {"verdict_nice", s.verdict_nice},
                {"verdict_not_nice", s.verdict_not_nice},
                {"verdict_inconclusive", s.verdict_inconclusive},
                {"disagreements", s.disagreements},
                {"square_fit_checked", s.square_fit_checked},
                {"square_fit_failed", s.square_fit_failed},
                {"agreement", s.agreement()},
                {"examples_of_disagreement", s.examples_of_disagreement}};
}

Json point_set_to_json(const PointSet& s) {
    Json pts = Json::array();
    for (const auto& p : s.points()) pts.push_back(Json::array({element_to_json(s.field(), p.x), element_to_json(s.field(), p.y)}));
    return Json{{"field", s.field().spec()}, {"points", std::move(pts)}};
}

PointSet point_set_from_json(const Json& j, const FieldPtr& field) {
    if (j.is_object() && j.contains("field") && j.at("field") != field->spec()) {
        throw InvalidArgument("point set is over F_" + j.at("field").get<std::string>() + ", expected F_" + field->spec());
    }
    std::vector<Point> pts;
    for (const auto& p : member(j, "points")) {
        if (!p.is_array() || p.size() != 2) throw InvalidArgument("each point must be a pair [x, y]");
        pts.push_back({element_from_json(*field, p[0]), element_from_json(*field, p[1])});
    }
    return PointSet(field, std::move(pts));
}

Json curve_family_to_json(const CurveFamily& c) {
    Json curves = Json::array();
    for (const auto& v : c.coeffs()) {
        Json row = Json::array();
        for (Raw a : v) row.push_back(element_to_json(c.field(), a));
        curves.push_back(std::move(row));
    }
    return Json{{"field", c.field().spec()}, {"degree", c.degree()}, {"curves", std::move(curves)}};
}

CurveFamily curve_family_from_json(const Json& j, const FieldPtr& field) {
    if (j.is_object() && j.contains("field") && j.at("field") != field->spec()) {
        throw InvalidArgument("curve family is over F_" + j.at("field").get<std::string>() + ", expected F_" + field->spec());
    }
    const int degree = get_as<int>(j, "degree");
    std::vector<std::vector<Raw>> coeffs;
    for (const auto& row : member(j, "curves")) {
        if (!row.is_array()) throw InvalidArgument("each curve must be a coefficient list [a_n, ..., a_0]");
        std::vector<Raw> c;
        for (const auto& a : row) c.push_back(element_from_json(*field, a));
        coeffs.push_back(std::move(c));
    }
    return CurveFamily(field, degree, std::move(coeffs));
}

Json vinh_to_json(const VinhCheck& v) {
    return Json{{"q", v.q},
                {"degree", v.degree},
                {"num_points", v.num_points},
                {"num_curves", v.num_curves},
                {"incidences", v.incidences},
                {"numerator", signed_big_to_json(v.numerator)},
                {"deviation", v.deviation()},
                {"bound", v.bound()},
                {"ratio", v.ratio()},
                {"satisfied", v.satisfied}};
}

Json report_to_json(const ExperimentReport& r) {
    Json j{{"schema_version", kSchemaVersion}, {"kind", r.kind}, {"field", r.field}, {"q", r.q}};
    if (r.poly) {
        j["poly"] = Json{{"text", r.poly_text}, {"json", poly_to_json(*r.poly)}};
    } else {
        j["poly"] = nullptr;
    }
    j["degree"] = r.degree;
    j["sampling"] = Json{{"mode", to_string(r.sampling.mode)}, {"sizes", r.sampling.sizes}, {"seed", r.sampling.seed}};
    j["set_sizes"] = r.set_sizes;
    j["image_size"] = r.image_size;
    j["deficiency"] = r.deficiency;
    j["statistic"] = Json{{"num", big_to_json(r.statistic.num)},
                          {"den", big_to_json(r.statistic.den)},
                          {"value", r.statistic.value()}};
    j["size_condition"] = Json{{"constant", r.size_constant}, {"sets_large", r.sets_large}};
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"passed", c.passed}});
    }
    j["checks"] = std::move(checks);
    j["warnings"] = r.warnings;
    j["precondition"] = r.precondition ? independence_to_json(*r.precondition) : Json(nullptr);
    j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

ExperimentReport report_from_json(const Json& j) {
    if (get_as<int>(j, "schema_version") != kSchemaVersion) throw InvalidArgument("unsupported report schema version");
    ExperimentReport r;
    r.kind = get_as<std::string>(j, "kind");
    r.field = get_as<std::string>(j, "field");
    const FieldPtr field = parse_field_spec(r.field);
    r.q = get_as<std::uint64_t>(j, "q");
    const Json& poly = member(j, "poly");
    if (!poly.is_null()) {
        r.poly_text = get_as<std::string>(poly, "text");
        r.poly = poly_from_json(member(poly, "json"), field);
    }
    r.degree = get_as<int>(j, "degree");
    const Json& s = member(j, "sampling");
    r.sampling.mode = parse_sample_mode(get_as<std::string>(s, "mode"));
    r.sampling.sizes = get_as<std::vector<std::uint64_t>>(s, "sizes");
    r.sampling.seed = get_as<std::uint64_t>(s, "seed");
    r.set_sizes = get_as<std::vector<std::uint64_t>>(j, "set_sizes");
    r.image_size = get_as<std::uint64_t>(j, "image_size");
    r.deficiency = get_as<std::uint64_t>(j, "deficiency");
    const Json& st = member(j, "statistic");
    r.statistic = {big_from_json(member(st, "num")), big_from_json(member(st, "den"))};
    const Json& sc = member(j, "size_condition");
    r.size_constant = get_as<double>(sc, "constant");
    r.sets_large = get_as<bool>(sc, "sets_large");
    for (const auto& c : member(j, "checks")) {
        r.checks.push_back({get_as<std::string>(c, "name"), get_as<double>(c, "value"), get_as<double>(c, "threshold"),
                            get_as<bool>(c, "passed")});
    }
    r.warnings = get_as<std::vector<std::string>>(j, "warnings");
    const Json& pre = member(j, "precondition");
    if (!pre.is_null()) r.precondition = independence_from_json(pre, field);
    r.wall_time_ms = get_as<double>(j, "wall_time_ms");
    return r;
}

std::string report_csv_header() {
    return "kind,field,q,degree,set_sizes,image_size,deficiency,statistic,statistic_value,checks_passed";
}

std::string report_csv_row(const ExperimentReport& r) {
    std::ostringstream os;
    os << r.kind << ',' << r.field << ',' << r.q << ',' << r.degree << ',';
    for (std::size_t i = 0; i < r.set_sizes.size(); ++i) os << (i ? ";" : "") << r.set_sizes[i];
    char value[64];
    std::snprintf(value, sizeof value, "%.17g", r.statistic.value());
    os << ',' << r.image_size << ',' << r.deficiency << ',' << to_decimal(r.statistic.num) << '/'
       << to_decimal(r.statistic.den) << ',' << value << ',' << (r.all_checks_passed() ? "true" : "false");
    return os.str();
}

Json strip_wall_time(const Json& j) {
    if (j.is_object()) {
        Json out = Json::object();
        for (const auto& [k, v] : j.items()) {
            if (k != "wall_time_ms") out[k] = strip_wall_time(v);
        }
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto& v : j) out.push_back(strip_wall_time(v));
        return out;
    }
    return j;
}

}  // namespace ffx
