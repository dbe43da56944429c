#include "ffexpand/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ffexpand/errors.hpp"
#include "ffexpand/expansion.hpp"
#include "ffexpand/incidence.hpp"
#include "ffexpand/serialize.hpp"
#include "ffexpand/structure.hpp"

namespace ffx {
namespace {

class IoError : public Error {
public:
    using Error::Error;
};

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-') {
        throw InvalidArgument("malformed " + what + " '" + text + "'");
    }
    return v;
}

std::int64_t parse_i64(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw InvalidArgument("malformed " + what + " '" + text + "'");
    return v;
}

std::string config_value(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + config_value(v[i]);
        return s;
    }
    return v.dump();
}

// Options from a JSON config file are appended for every flag the chosen
// subcommand knows and the command line does not already set.
std::vector<std::string> merge_config(CLI::App& app, std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (!path) return args;
    CLI::App* sub = nullptr;
    for (const auto& a : args) {
        for (CLI::App* s : app.get_subcommands({})) {
            if (s->get_name() == a) sub = s;
        }
        if (sub) break;
    }
    if (!sub) return args;
    const Json cfg = load_json_file(*path);
    if (!cfg.is_object()) throw InvalidArgument("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (key == "config" || !sub->get_option_no_throw(flag)) continue;
        const bool present = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (present) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
            continue;
        }
        args.push_back(flag);
        args.push_back(config_value(value));
    }
    return args;
}

Json echo_config(const CLI::App& sub) {
    Json cfg{{"command", sub.get_name()}};
    for (const CLI::Option* opt : sub.get_options({})) {
        if (opt->get_lnames().empty()) continue;
        const std::string name = opt->get_lnames().front();
        if (name == "help" || name == "config") continue;
        if (opt->get_expected_min() == 0) {
            cfg[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            std::string v;
            for (std::size_t i = 0; i < opt->results().size(); ++i) v += (i ? "," : "") + opt->results()[i];
            cfg[name] = v;
        } else if (!opt->get_default_str().empty()) {
            cfg[name] = opt->get_default_str();
        } else {
            cfg[name] = nullptr;
        }
    }
    return cfg;
}

struct Common {
    std::string field;
    std::uint64_t seed = 0;
    std::string format = "json";
};

void add_common(CLI::App* sub, Common& c, bool needs_field = true) {
    if (needs_field) sub->add_option("--field", c.field, "Field spec p or p^k")->required();
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->capture_default_str();
    sub->add_option("--config", "JSON file supplying any flag; the command line wins");
}

MvPoly read_poly(const std::string& text, std::optional<std::size_t> nvars, const FieldPtr& field) {
    return parse_poly(text, nvars ? *nvars : infer_nvars(text), field);
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json wrap(const CLI::App& sub, const char* key, Json body) {
    return Json{{"schema_version", kSchemaVersion}, {"command", sub.get_name()}, {"config", echo_config(sub)},
                {key, std::move(body)}};
}

Json report_document(const CLI::App& sub, const ExperimentReport& r) {
    Json j = report_to_json(r);
    j["command"] = sub.get_name();
    j["config"] = echo_config(sub);
    return j;
}

void human_report(std::ostream& out, const ExperimentReport& r) {
    out << r.kind << " over F_" << r.field << "\n";
    if (r.poly) out << "  polynomial: " << r.poly_text << "\n";
    out << "  set sizes:";
    for (auto s : r.set_sizes) out << ' ' << s;
    out << "\n  image: " << r.image_size << " of " << r.q << " (deficiency " << r.deficiency << ")\n";
    out << "  statistic: " << to_decimal(r.statistic.num) << '/' << to_decimal(r.statistic.den) << " = "
        << std::setprecision(6) << r.statistic.value() << "\n";
    out << "  sets large (C = " << r.size_constant << "): " << (r.sets_large ? "yes" : "no") << "\n";
    for (const auto& c : r.checks) {
        out << "  check " << c.name << ": " << c.value << " vs " << c.threshold << (c.passed ? " pass" : " FAIL") << "\n";
    }
    for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
}

void emit_report(std::ostream& out, const CLI::App& sub, const std::string& format, const ExperimentReport& r) {
    if (format == "json") {
        emit_json(out, report_document(sub, r));
    } else if (format == "csv") {
        out << report_csv_header() << '\n' << report_csv_row(r) << '\n';
    } else {
        human_report(out, r);
    }
}

Sampling parse_sets(const std::string& text, std::size_t count, std::uint64_t seed) {
    Sampling s;
    s.seed = seed;
    const auto colon = text.find(':');
    s.mode = parse_sample_mode(text.substr(0, colon));
    if (s.mode == SampleMode::Full) {
        if (colon != std::string::npos) throw InvalidArgument("'full' takes no sizes");
        return s;
    }
    if (colon == std::string::npos) throw InvalidArgument("set sizes missing: use " + text + ":s1,s2,...");
    for (const auto& part : split(text.substr(colon + 1), ',')) s.sizes.push_back(parse_u64(part, "set size"));
    if (s.sizes.size() == 1) s.sizes.assign(count, s.sizes[0]);
    return s;
}

// check-nice ---------------------------------------------------------------

struct NiceArgs {
    Common common;
    std::string poly;
    std::optional<std::size_t> nvars;
    std::optional<int> bound;
};

int cmd_check_nice(const CLI::App& sub, const NiceArgs& a, std::ostream& out) {
    const FieldPtr field = parse_field_spec(a.common.field);
    const MvPoly p = read_poly(a.poly, a.nvars, field);
    NicenessOptions opts;
    opts.bound = a.bound;
    const NicenessVerdict v = is_nice(p, opts);
    if (a.common.format == "json") {
        Json body = verdict_to_json(v);
        body["poly"] = Json{{"text", p.to_string()}, {"json", poly_to_json(p)}};
        emit_json(out, wrap(sub, "verdict", std::move(body)));
    } else if (a.common.format == "csv") {
        out << "status,degree,distinguished,bound_used\n"
            << to_string(v.status) << ',' << v.degree << ','
            << (v.distinguished ? variable_name(*v.distinguished, p.nvars()) : "") << ',' << v.bound_used << '\n';
    } else {
        out << p.to_string() << " over F_" << field->spec() << ": " << to_string(v.status) << "\n";
        for (const auto& c : v.checks) {
            out << "  distinguished " << variable_name(c.variable, p.nvars()) << ": " << to_string(c.check.outcome);
            if (c.check.jacobian) out << " (Jacobian minor " << c.check.jacobian->determinant.to_string() << ")";
            if (c.check.relation) out << " (relation " << c.check.relation->relation.to_string() << ")";
            if (c.check.outcome == Independence::Unknown) out << " (no certificate up to degree " << c.check.bound_used << ")";
            out << "\n";
        }
    }
    switch (v.status) {
        case NiceStatus::Nice: return kExitOk;
        case NiceStatus::NotNice: return kExitNegative;
        case NiceStatus::Inconclusive: return kExitInconclusive;
    }
    return kExitInternal;
}

// incidence ----------------------------------------------------------------

struct IncidenceArgs {
    Common common;
    int degree = 1;
    std::string points = "full";
    std::string curves = "full";
    std::uint64_t trials = 1;
};

// "N" (random, main generator), "random:N:S" (random, own generator), "full", or a JSON file.
struct InstanceSource {
    enum Kind { Random, Full, File } kind = Full;
    std::uint64_t size = 0;
    std::unique_ptr<Rng> own;
    Json file;
};

InstanceSource parse_source(const std::string& text) {
    InstanceSource s;
    if (text == "full") return s;
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        s.kind = InstanceSource::Random;
        s.size = parse_u64(text, "instance size");
        return s;
    }
    if (text.rfind("random:", 0) == 0) {
        const auto parts = split(text.substr(7), ':');
        if (parts.empty() || parts.size() > 2) throw InvalidArgument("expected random:<size>[:<seed>], got '" + text + "'");
        s.kind = InstanceSource::Random;
        s.size = parse_u64(parts[0], "instance size");
        if (parts.size() == 2) s.own = std::make_unique<Rng>(parse_u64(parts[1], "seed"));
        return s;
    }
    s.kind = InstanceSource::File;
    s.file = load_json_file(text);
    return s;
}

int cmd_incidence(const CLI::App& sub, const IncidenceArgs& a, std::ostream& out) {
    const FieldPtr field = parse_field_spec(a.common.field);
    if (a.degree < 1) throw InvalidArgument("--degree must be at least 1");
    if (field->order() <= static_cast<std::uint32_t>(a.degree)) {
        throw DomainError("curves of degree " + std::to_string(a.degree) + " need q > n, but q = " +
                          std::to_string(field->order()));
    }
    InstanceSource ps = parse_source(a.points), cs = parse_source(a.curves);
    Rng main_rng(a.common.seed);

    std::vector<VinhCheck> results;
    for (std::uint64_t t = 0; t < a.trials; ++t) {
        auto make_points = [&]() {
            switch (ps.kind) {
                case InstanceSource::Random: return random_points(field, ps.size, ps.own ? *ps.own : main_rng);
                case InstanceSource::Full: return all_points(field);
                case InstanceSource::File: return point_set_from_json(ps.file, field);
            }
            throw Error("unreachable");
        };
        auto make_curves = [&]() {
            switch (cs.kind) {
                case InstanceSource::Random: return random_curves(field, a.degree, cs.size, cs.own ? *cs.own : main_rng);
                case InstanceSource::Full: return all_curves(field, a.degree);
                case InstanceSource::File: {
                    CurveFamily c = curve_family_from_json(cs.file, field);
                    if (c.degree() != a.degree) throw InvalidArgument("curve file degree does not match --degree");
                    return c;
                }
            }
            throw Error("unreachable");
        };
        const PointSet pts = make_points();
        const CurveFamily curves = make_curves();
        results.push_back(vinh_deviation(pts, curves));
    }

    std::uint64_t satisfied = 0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        satisfied += results[i].satisfied;
        if (results[i].ratio() > results[worst].ratio()) worst = i;
    }
    const bool all_ok = satisfied == results.size();

    if (a.common.format == "json") {
        Json trials = Json::array();
        for (const auto& r : results) trials.push_back(vinh_to_json(r));
        Json body{{"field", field->spec()},
                  {"degree", a.degree},
                  {"trials", results.size()},
                  {"satisfied", satisfied},
                  {"all_satisfied", all_ok},
                  {"max_ratio", results.empty() ? 0.0 : results[worst].ratio()},
                  {"worst", results.empty() ? Json(nullptr) : vinh_to_json(results[worst])},
                  {"instances", std::move(trials)}};
        emit_json(out, wrap(sub, "incidence", std::move(body)));
    } else if (a.common.format == "csv") {
        out << "trial,q,degree,num_points,num_curves,incidences,numerator,satisfied\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            out << i << ',' << r.q << ',' << r.degree << ',' << r.num_points << ',' << r.num_curves << ','
                << r.incidences << ',' << vinh_to_json(r)["numerator"].dump() << ',' << (r.satisfied ? "true" : "false")
                << '\n';
        }
    } else {
        out << "incidences over F_" << field->spec() << ", curve degree " << a.degree << ": " << satisfied << "/"
            << results.size() << " trials satisfy the bound\n";
        if (!results.empty()) {
            const auto& w = results[worst];
            out << "  largest deviation/bound " << std::setprecision(6) << w.ratio() << " (I = " << w.incidences
                << ", |P| = " << w.num_points << ", |Q| = " << w.num_curves << ")\n";
        }
    }
    return all_ok ? kExitOk : kExitNegative;
}

// expand -------------------------------------------------------------------

struct ExpandArgs {
    Common common;
    std::string poly;
    std::optional<std::size_t> nvars;
    std::string sets = "full";
    double constant = 1.0;
    std::optional<std::uint64_t> threshold;
    bool no_early_exit = false;
};

int cmd_expand(const CLI::App& sub, const ExpandArgs& a, std::ostream& out) {
    const FieldPtr field = parse_field_spec(a.common.field);
    const MvPoly p = read_poly(a.poly, a.nvars, field);
    const Sampling sampling = parse_sets(a.sets, p.nvars(), a.common.seed);
    const auto sets = sample_sets(field, p.nvars(), sampling);
    DeficiencyOptions opts;
    opts.size_constant = a.constant;
    opts.deficiency_threshold = a.threshold;
    opts.image.early_exit = !a.no_early_exit;
    const ExperimentReport r = deficiency_stat(p, sets, sampling, opts);
    emit_report(out, sub, a.common.format, r);
    return r.all_checks_passed() ? kExitOk : kExitNegative;
}

// counterexample -----------------------------------------------------------

struct CounterexampleArgs {
    Common common;
    std::uint32_t prime = 0;
    std::string coeffs = "1,1,1";
};

int cmd_counterexample(const CLI::App& sub, const CounterexampleArgs& a, std::ostream& out) {
    const FieldPtr field = FieldCtx::create(a.prime);
    const auto parts = split(a.coeffs, ',');
    if (parts.size() != 3) throw InvalidArgument("--coeffs needs three comma-separated integers a,b,c");
    Raw c[3];
    for (int i = 0; i < 3; ++i) c[i] = field->from_int(parse_i64(parts[i], "coefficient"));
    ExperimentReport r = counterexample_run(field, c[0], c[1], c[2]);
    r.sampling.seed = a.common.seed;
    emit_report(out, sub, a.common.format, r);
    return r.all_checks_passed() ? kExitOk : kExitNegative;
}

// classify-quadratic -------------------------------------------------------

struct ClassifyArgs {
    Common common;
    std::optional<std::string> poly;
    bool exhaustive = false;
    std::optional<std::uint64_t> random;
    std::optional<int> bound;
};

int cmd_classify(const CLI::App& sub, const ClassifyArgs& a, std::ostream& out) {
    const FieldPtr field = parse_field_spec(a.common.field);
    const int modes = (a.poly ? 1 : 0) + (a.exhaustive ? 1 : 0) + (a.random ? 1 : 0);
    if (modes != 1) throw InvalidArgument("choose exactly one of --poly, --exhaustive, --random N");
    NicenessOptions opts;
    opts.bound = a.bound;

    if (a.poly) {
        const MvPoly q = parse_poly(*a.poly, 3, field);
        const QuadraticClassification c = classify_quadratic(q);
        const NicenessVerdict v = is_nice(q, opts);
        const bool agree = (v.status == NiceStatus::Nice) == c.nice && v.status != NiceStatus::Inconclusive;
        if (a.common.format == "json") {
            Json body = classification_to_json(*field, c);
            body["poly"] = Json{{"text", q.to_string()}, {"json", poly_to_json(q)}};
            body["verdict"] = verdict_to_json(v);
            body["agreement"] = agree;
            emit_json(out, wrap(sub, "classification", std::move(body)));
        } else if (a.common.format == "csv") {
            out << "nice,reason,verdict,agreement\n"
                << (c.nice ? "true" : "false") << ',' << to_string(c.reason) << ',' << to_string(v.status) << ','
                << (agree ? "true" : "false") << '\n';
        } else {
            out << q.to_string() << " over F_" << field->spec() << ": " << (c.nice ? "Nice" : "NotNice") << " ("
                << to_string(c.reason) << "); is_nice says " << to_string(v.status) << "\n";
        }
        return c.nice ? kExitOk : kExitNegative;
    }

    const QuadraticScanSummary s =
        a.exhaustive ? exhaustive_quadratic_scan(field, opts) : random_quadratic_scan(field, *a.random, a.common.seed, opts);
    if (a.common.format == "json") {
        Json body = scan_summary_to_json(s);
        body["mode"] = a.exhaustive ? "exhaustive" : "random";
        emit_json(out, wrap(sub, "scan", std::move(body)));
    } else if (a.common.format == "csv") {
        out << "mode,scanned,classified_nice,classified_not_nice,verdict_inconclusive,disagreements,agreement\n"
            << (a.exhaustive ? "exhaustive" : "random") << ',' << s.scanned << ',' << s.classified_nice << ','
            << s.classified_not_nice << ',' << s.verdict_inconclusive << ',' << s.disagreements << ','
            << (s.agreement() ? "true" : "false") << '\n';
    } else {
        out << (a.exhaustive ? "exhaustive" : "random") << " scan over F_" << field->spec() << ": " << s.scanned
            << " quadratics, " << s.classified_nice << " nice, " << s.classified_not_nice << " not nice\n"
            << "  disagreements with is_nice: " << s.disagreements << ", inconclusive: " << s.verdict_inconclusive
            << "\n  dependent pairs fitted as aL^2 + bL: " << s.square_fit_checked - s.square_fit_failed << "/"
            << s.square_fit_checked << "\n";
        for (const auto& e : s.examples_of_disagreement) out << "  disagreement: " << e << "\n";
    }
    return s.agreement() && s.square_fit_failed == 0 ? kExitOk : kExitNegative;
}

// annihilator --------------------------------------------------------------

struct AnnihilatorArgs {
    Common common;
    std::string polys;
    std::optional<std::size_t> nvars;
    std::optional<int> bound;
};

int cmd_annihilator(const CLI::App& sub, const AnnihilatorArgs& a, std::ostream& out) {
    const FieldPtr field = parse_field_spec(a.common.field);
    const auto texts = split(a.polys, ';');
    if (texts.empty()) throw InvalidArgument("--polys needs at least one polynomial");
    std::size_t nvars = 0;
    if (a.nvars) {
        nvars = *a.nvars;
    } else {
        for (const auto& t : texts) nvars = std::max(nvars, infer_nvars(t));
    }
    std::vector<MvPoly> polys;
    for (const auto& t : texts) polys.push_back(parse_poly(t, nvars, field));
    const int bound = a.bound ? *a.bound : default_annihilator_bound(polys, AnnihilatorLimits{}.max_columns);
    const auto rel = find_annihilator(polys, bound);

    if (a.common.format == "json") {
        Json inputs = Json::array();
        for (const auto& p : polys) inputs.push_back(p.to_string());
        Json body{{"polys", std::move(inputs)}, {"bound_used", bound}, {"found", rel.has_value()}};
        body["relation"] = rel ? relation_to_json(*rel) : Json(nullptr);
        body["verified"] = rel ? Json(rel->verify()) : Json(nullptr);
        emit_json(out, wrap(sub, "annihilator", std::move(body)));
    } else if (a.common.format == "csv") {
        out << "found,degree,bound_used,relation\n"
            << (rel ? "true" : "false") << ',' << (rel ? rel->degree() : 0) << ',' << bound << ','
            << (rel ? rel->relation.to_string() : "") << '\n';
    } else if (rel) {
        out << "relation of degree " << rel->degree() << ": " << rel->relation.to_string() << "\n";
        for (std::size_t i = 0; i < polys.size(); ++i) {
            out << "  " << variable_name(i, polys.size()) << " = " << polys[i].to_string() << "\n";
        }
    } else {
        out << "no relation of degree <= " << bound << "\n";
    }
    return rel ? kExitOk : kExitNegative;
}

// conc-family --------------------------------------------------------------

struct ConcArgs {
    Common common;
    std::string a = "1";
    int d = 3;
    std::string f;
    std::string g;
    std::string sets = "full";
    std::optional<int> bound;
    std::optional<std::uint64_t> threshold;
    double constant = 1.0;
};

MvPoly read_yz_poly(const std::string& text, const FieldPtr& field, const char* which) {
    const MvPoly p = parse_poly(text, 3, field);
    if (p.uses_variable(0)) throw InvalidArgument(std::string(which) + " must be a polynomial in y and z only");
    return p.drop_variable(0);
}

int cmd_conc(const CLI::App& sub, const ConcArgs& a, std::ostream& out, std::ostream& err) {
    const FieldPtr field = parse_field_spec(a.common.field);
    const MvPoly lead = parse_poly(a.a, 1, field);
    if (!lead.is_constant() && !lead.is_zero()) throw InvalidArgument("--a must be a field constant");
    ConcFamily fam{lead.constant_term(), a.d, read_yz_poly(a.f, field, "F"), read_yz_poly(a.g, field, "G")};
    const Sampling sampling = parse_sets(a.sets, 3, a.common.seed);
    const auto sets = sample_sets(field, 3, sampling);
    NicenessOptions nopts;
    nopts.bound = a.bound;
    DeficiencyOptions dopts;
    dopts.deficiency_threshold = a.threshold;
    dopts.size_constant = a.constant;
    const ExperimentReport r = conc_family_run(fam, sets, sampling, nopts, dopts);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    emit_report(out, sub, a.common.format, r);
    return r.all_checks_passed() ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-field expansion and incidence experiments", "ffexpand"};
    app.require_subcommand(1);

    NiceArgs nice;
    auto* s_nice = app.add_subcommand("check-nice", "Test whether a polynomial is nice");
    add_common(s_nice, nice.common);
    s_nice->add_option("--poly", nice.poly, "Polynomial text")->required();
    s_nice->add_option("--nvars", nice.nvars, "Number of variables (default: inferred)");
    s_nice->add_option("--bound", nice.bound, "Annihilator degree bound");

    IncidenceArgs inc;
    auto* s_inc = app.add_subcommand("incidence", "Check the incidence bound on point/curve instances");
    add_common(s_inc, inc.common);
    s_inc->add_option("--degree", inc.degree, "Curve degree n")->capture_default_str();
    s_inc->add_option("--points", inc.points, "N, random:N[:SEED], full, or a JSON file")->capture_default_str();
    s_inc->add_option("--curves", inc.curves, "N, random:N[:SEED], full, or a JSON file")->capture_default_str();
    s_inc->add_option("--trials", inc.trials, "Number of instances")->capture_default_str();

    ExpandArgs exp;
    auto* s_exp = app.add_subcommand("expand", "Measure |P(X_1,...,X_k)| and the deficiency");
    add_common(s_exp, exp.common);
    s_exp->add_option("--poly", exp.poly, "Polynomial text")->required();
    s_exp->add_option("--nvars", exp.nvars, "Number of variables (default: inferred)");
    s_exp->add_option("--sets", exp.sets, "full, uniform:s1,s2,... or interval:s1,s2,...")->capture_default_str();
    s_exp->add_option("--constant", exp.constant, "C in |X_i| >= C q^{(k-1)/k}")->capture_default_str();
    s_exp->add_option("--threshold", exp.threshold, "Fail when the deficiency exceeds this");
    s_exp->add_flag("--no-early-exit", exp.no_early_exit, "Scan the whole product");

    CounterexampleArgs ce;
    auto* s_ce = app.add_subcommand("counterexample", "Build the diagonal-form sets and check the image ceiling");
    add_common(s_ce, ce.common, false);
    s_ce->add_option("--prime", ce.prime, "Odd prime p")->required();
    s_ce->add_option("--coeffs", ce.coeffs, "a,b,c")->capture_default_str();

    ClassifyArgs cls;
    auto* s_cls = app.add_subcommand("classify-quadratic", "Classify ternary quadratics and compare with check-nice");
    add_common(s_cls, cls.common);
    s_cls->add_option("--poly", cls.poly, "A single quadratic in x, y, z");
    s_cls->add_flag("--exhaustive", cls.exhaustive, "Scan every constant-free quadratic");
    s_cls->add_option("--random", cls.random, "Scan this many seeded random quadratics");
    s_cls->add_option("--bound", cls.bound, "Annihilator degree bound");

    AnnihilatorArgs ann;
    auto* s_ann = app.add_subcommand("annihilator", "Search for a polynomial relation among polynomials");
    add_common(s_ann, ann.common);
    s_ann->add_option("--polys", ann.polys, "Polynomials separated by ';'")->required();
    s_ann->add_option("--nvars", ann.nvars, "Number of variables (default: inferred)");
    s_ann->add_option("--bound", ann.bound, "Relation degree bound (default: product of degrees)");

    ConcArgs conc;
    auto* s_conc = app.add_subcommand("conc-family", "Run a x^d + F(y,z) x + G(y,z)");
    add_common(s_conc, conc.common);
    s_conc->add_option("--a", conc.a, "Leading coefficient")->capture_default_str();
    s_conc->add_option("--d", conc.d, "Leading exponent")->capture_default_str();
    s_conc->add_option("--F", conc.f, "F(y, z)")->required();
    s_conc->add_option("--G", conc.g, "G(y, z)")->required();
    s_conc->add_option("--sets", conc.sets, "full, uniform:s1,s2,s3 or interval:s1,s2,s3")->capture_default_str();
    s_conc->add_option("--bound", conc.bound, "Annihilator degree bound for the F, G check");
    s_conc->add_option("--threshold", conc.threshold, "Fail when the deficiency exceeds this");
    s_conc->add_option("--constant", conc.constant, "C in |X_i| >= C q^{2/3}")->capture_default_str();

    try {
        std::vector<std::string> args = merge_config(app, raw_args);
        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitUsage;
        }
        if (*s_nice) return cmd_check_nice(*s_nice, nice, out);
        if (*s_inc) return cmd_incidence(*s_inc, inc, out);
        if (*s_exp) return cmd_expand(*s_exp, exp, out);
        if (*s_ce) return cmd_counterexample(*s_ce, ce, out);
        if (*s_cls) return cmd_classify(*s_cls, cls, out);
        if (*s_ann) return cmd_annihilator(*s_ann, ann, out);
        if (*s_conc) return cmd_conc(*s_conc, conc, out, err);
        err << "error: no subcommand\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const ContextMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitCap;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace ffx
