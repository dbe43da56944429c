#include "ffexpand/expansion.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>

#include "ffexpand/errors.hpp"
#include "ffexpand/parallel.hpp"
#include "ffexpand/rng.hpp"

namespace ffx {
namespace {

using U128 = unsigned __int128;

U128 gcd128(U128 a, U128 b) {
    while (b != 0) {
        const U128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

U128 checked_mul(U128 a, U128 b) {
    U128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw CapExceeded("normalized statistic exceeds 128-bit range");
    return r;
}

// Evaluation plan: the coefficient vector over suffix monomials
// (e_i, ..., e_{k-1}) is pushed through one variable at a time, so an
// assignment of x_0..x_{i-1} is shared by the whole subtree below it.
struct Plan {
    std::size_t k = 0;
    std::vector<Raw> base;  // coefficients indexed by level-0 suffix id
    // steps[i][t] = (exponent of x_i, suffix id at level i+1)
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> steps;
    std::vector<std::size_t> width;  // number of suffixes at each level, width[k] = 1
    std::vector<std::uint32_t> max_exp;
};

Plan compile(const MvPoly& p) {
    Plan plan;
    plan.k = p.nvars();
    plan.steps.resize(plan.k);
    plan.width.assign(plan.k + 1, 1);
    plan.max_exp.assign(plan.k, 0);

    std::vector<Exponents> level;
    for (const auto& [e, c] : p.terms()) {
        level.push_back(e);
        plan.base.push_back(c);
    }
    plan.width[0] = level.size();
    for (std::size_t i = 0; i < plan.k; ++i) {
        std::map<Exponents, std::uint32_t> next_ids;
        std::vector<Exponents> next;
        for (const auto& e : level) {
            Exponents tail(e.begin() + 1, e.end());
            auto [it, fresh] = next_ids.try_emplace(tail, static_cast<std::uint32_t>(next.size()));
            if (fresh) next.push_back(tail);
            plan.steps[i].emplace_back(e[0], it->second);
            plan.max_exp[i] = std::max(plan.max_exp[i], e[0]);
        }
        level = std::move(next);
        plan.width[i + 1] = std::max<std::size_t>(1, level.size());
    }
    return plan;
}

class Scanner {
public:
    Scanner(const FieldCtx& f, const Plan& plan, std::span<const ElementSet> sets, bool early_exit)
        : f_(f), plan_(plan), sets_(sets), early_exit_(early_exit), seen_(f.order(), false) {
        if (!early_exit) hits_.assign(f.order(), 0);
        for (std::size_t i = 0; i <= plan.k; ++i) buf_.emplace_back(plan.width[i], 0);
        pow_.resize(plan.k);
        for (std::size_t i = 0; i < plan.k; ++i) {
            const std::size_t stride = plan.max_exp[i] + 1;
            pow_[i].resize(sets[i].size() * stride);
            for (std::size_t j = 0; j < sets[i].size(); ++j) {
                Raw v = 1;
                for (std::size_t e = 0; e < stride; ++e) {
                    pow_[i][j * stride + e] = v;
                    v = f.mul(v, sets[i][j]);
                }
            }
        }
    }

    void run(std::size_t first_begin, std::size_t first_end) {
        if (plan_.base.empty()) {
            // Zero polynomial: one evaluation per tuple, all mapping to 0.
            U128 tuples = first_end - first_begin;
            for (std::size_t i = 1; i < plan_.k; ++i) tuples *= sets_[i].size();
            if (tuples == 0) return;
            evaluations_ += early_exit_ ? 1 : static_cast<std::uint64_t>(tuples);
            record(0, early_exit_ ? 1 : static_cast<std::uint64_t>(tuples));
            return;
        }
        std::copy(plan_.base.begin(), plan_.base.end(), buf_[0].begin());
        for (std::size_t j = first_begin; j < first_end && !done_; ++j) descend(0, j);
    }

    const std::vector<bool>& seen() const { return seen_; }
    const std::vector<std::uint64_t>& hits() const { return hits_; }
    std::uint64_t evaluations() const { return evaluations_; }
    bool done() const { return done_; }

private:
    void descend(std::size_t level, std::size_t j) {
        const std::size_t stride = plan_.max_exp[level] + 1;
        const Raw* powers = &pow_[level][j * stride];
        std::vector<Raw>& next = buf_[level + 1];
        std::fill(next.begin(), next.end(), 0);
        const std::vector<Raw>& cur = buf_[level];
        const auto& step = plan_.steps[level];
        for (std::size_t t = 0; t < step.size(); ++t) {
            if (cur[t] == 0) continue;
            const auto [e, to] = step[t];
            next[to] = f_.add(next[to], f_.mul(cur[t], powers[e]));
        }
        if (level + 1 == plan_.k) {
            ++evaluations_;
            record(next[0], 1);
            return;
        }
        const std::size_t n = sets_[level + 1].size();
        for (std::size_t i = 0; i < n && !done_; ++i) descend(level + 1, i);
    }

    void record(Raw v, std::uint64_t times) {
        if (!hits_.empty()) hits_[v] += times;
        if (!seen_[v]) {
            seen_[v] = true;
            if (++distinct_ == f_.order() && early_exit_) done_ = true;
        }
    }

    const FieldCtx& f_;
    const Plan& plan_;
    std::span<const ElementSet> sets_;
    bool early_exit_;
    std::vector<std::vector<Raw>> buf_;
    std::vector<std::vector<Raw>> pow_;
    std::vector<bool> seen_;
    std::vector<std::uint64_t> hits_;
    std::uint64_t distinct_ = 0;
    std::uint64_t evaluations_ = 0;
    bool done_ = false;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ElementSet make_set(const FieldCtx& field, std::vector<Raw> values) {
    for (Raw v : values) {
        if (v >= field.order()) throw InvalidArgument("set element " + std::to_string(v) + " is outside F_" + field.spec());
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

ImageResult image_set(const MvPoly& p, std::span<const ElementSet> sets, const ImageOptions& opts) {
    const FieldCtx& f = p.field();
    if (sets.size() != p.nvars()) {
        throw InvalidArgument("polynomial has " + std::to_string(p.nvars()) + " variables but " +
                              std::to_string(sets.size()) + " sets were given");
    }
    for (const auto& s : sets) {
        for (Raw v : s) {
            if (v >= f.order()) throw InvalidArgument("set element " + std::to_string(v) + " is outside F_" + f.spec());
        }
    }
    ImageResult out;
    for (const auto& s : sets) {
        if (s.empty()) return out;
    }

    const Plan plan = compile(p);
    const unsigned workers = std::min<std::size_t>(opts.threads == 0 ? worker_count() : opts.threads, sets[0].size());
    std::vector<std::unique_ptr<Scanner>> scanners;
    for (unsigned w = 0; w < std::max(1u, workers); ++w) {
        scanners.push_back(std::make_unique<Scanner>(f, plan, sets, opts.early_exit));
    }
    parallel_chunks(sets[0].size(), static_cast<unsigned>(scanners.size()),
                    [&](unsigned w, std::size_t begin, std::size_t end) { scanners[w]->run(begin, end); });

    std::vector<bool> seen(f.order(), false);
    if (!opts.early_exit) out.hits.assign(f.order(), 0);
    for (const auto& s : scanners) {
        out.evaluations += s->evaluations();
        out.exited_early = out.exited_early || s->done();
        for (std::uint32_t v = 0; v < f.order(); ++v) {
            if (s->seen()[v]) seen[v] = true;
            if (!out.hits.empty()) out.hits[v] += s->hits()[v];
        }
    }
    for (std::uint32_t v = 0; v < f.order(); ++v) {
        if (seen[v]) out.image.push_back(v);
    }
    return out;
}

const char* to_string(SampleMode m) {
    switch (m) {
        case SampleMode::Full: return "full";
        case SampleMode::Uniform: return "uniform";
        case SampleMode::Interval: return "interval";
    }
    return "?";
}

SampleMode parse_sample_mode(std::string_view text) {
    if (text == "full") return SampleMode::Full;
    if (text == "uniform") return SampleMode::Uniform;
    if (text == "interval") return SampleMode::Interval;
    throw InvalidArgument("unknown sampling mode '" + std::string(text) + "' (expected full, uniform or interval)");
}

std::vector<ElementSet> sample_sets(const FieldPtr& field, std::size_t count, const Sampling& sampling) {
    const std::uint64_t q = field->order();
    std::vector<ElementSet> out;
    if (sampling.mode == SampleMode::Full) {
        ElementSet all(q);
        for (std::uint64_t v = 0; v < q; ++v) all[v] = static_cast<Raw>(v);
        out.assign(count, all);
        return out;
    }
    if (sampling.sizes.size() != count) {
        throw InvalidArgument("expected " + std::to_string(count) + " set sizes, got " +
                              std::to_string(sampling.sizes.size()));
    }
    for (auto s : sampling.sizes) {
        if (s > q) throw InvalidArgument("set size " + std::to_string(s) + " exceeds q = " + std::to_string(q));
    }
    if (sampling.mode == SampleMode::Interval) {
        if (!field->is_prime_field()) throw DomainError("interval sampling needs a prime field");
        for (auto s : sampling.sizes) {
            ElementSet set(s);
            for (std::uint64_t v = 0; v < s; ++v) set[v] = static_cast<Raw>(v);
            out.push_back(std::move(set));
        }
        return out;
    }
    Rng rng(sampling.seed);
    for (auto s : sampling.sizes) {
        ElementSet set;
        for (auto v : rng.sample_distinct(q, s)) set.push_back(static_cast<Raw>(v));
        out.push_back(std::move(set));
    }
    return out;
}

std::string to_decimal(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

unsigned __int128 parse_decimal(std::string_view text) {
    if (text.empty()) throw InvalidArgument("empty decimal string");
    U128 v = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw InvalidArgument("malformed decimal '" + std::string(text) + "'");
        if (__builtin_mul_overflow(v, U128{10}, &v) || __builtin_add_overflow(v, U128(ch - '0'), &v)) {
            throw InvalidArgument("decimal '" + std::string(text) + "' exceeds 128 bits");
        }
    }
    return v;
}

bool ExperimentReport::all_checks_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed; });
}

ExperimentReport deficiency_stat(const MvPoly& p, std::span<const ElementSet> sets, const Sampling& sampling,
                                 const DeficiencyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const ImageResult img = image_set(p, sets, opts.image);
    const FieldCtx& f = p.field();

    ExperimentReport r;
    r.kind = "expand";
    r.field = f.spec();
    r.poly_text = p.to_string();
    r.poly = p;
    r.degree = std::max(0, p.total_degree());
    r.sampling = sampling;
    r.q = f.order();
    r.image_size = img.image.size();
    r.deficiency = r.q - r.image_size;

    const std::size_t k = sets.size();
    U128 num = r.deficiency, den = 1;
    for (const auto& s : sets) {
        r.set_sizes.push_back(s.size());
        num = checked_mul(num, s.size());
        den = checked_mul(den, r.q);
    }
    const U128 g = gcd128(num, den);
    r.statistic = {num / g, den / g};
    if (num == 0) r.statistic = {0, 1};

    r.size_constant = opts.size_constant;
    const double need = opts.size_constant * std::pow(static_cast<double>(r.q), (k - 1.0) / static_cast<double>(k));
    r.sets_large = std::all_of(sets.begin(), sets.end(), [&](const ElementSet& s) { return s.size() >= need; });
    if (opts.deficiency_threshold) {
        r.checks.push_back({"deficiency", static_cast<double>(r.deficiency), static_cast<double>(*opts.deficiency_threshold),
                            r.deficiency <= *opts.deficiency_threshold});
    }
    r.wall_time_ms = elapsed_ms(start);
    return r;
}

CounterexampleSets counterexample_sets(const FieldPtr& field, Raw a, Raw b, Raw c) {
    if (!field->is_prime_field()) throw DomainError("the counterexample sets are defined over prime fields only");
    const std::uint32_t p = field->characteristic();
    if (p == 2) throw DomainError("the counterexample sets need an odd prime");
    for (Raw v : {a, b, c}) {
        if (v == 0 || v >= p) throw InvalidArgument("counterexample coefficients must be nonzero elements of F_p");
    }
    const std::uint32_t quarter = p / 4;
    auto build = [&](Raw coeff) {
        ElementSet s;
        for (Raw x = 0; x < p; ++x) {
            const std::uint32_t r = canon_rep(field->element(field->mul(coeff, field->mul(x, x))));
            if (r >= 1 && r <= quarter) s.push_back(x);
        }
        return s;
    };
    return {build(a), build(b), build(c)};
}

ExperimentReport counterexample_run(const FieldPtr& field, Raw a, Raw b, Raw c, const ImageOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const CounterexampleSets cs = counterexample_sets(field, a, b, c);
    MvPoly q(field, 3);
    q.add_term({2, 0, 0}, a);
    q.add_term({0, 2, 0}, b);
    q.add_term({0, 0, 2}, c);
    const ElementSet sets[] = {cs.x, cs.y, cs.z};
    Sampling sampling;
    sampling.mode = SampleMode::Full;  // replaced below; the sets are constructed, not sampled
    DeficiencyOptions dopts;
    dopts.image = opts;
    ExperimentReport r = deficiency_stat(q, sets, sampling, dopts);
    r.kind = "counterexample";
    r.sampling.sizes = r.set_sizes;
    const std::uint64_t ceiling = 3ull * field->characteristic() / 4;
    r.checks.push_back({"image_ceiling", static_cast<double>(r.image_size), static_cast<double>(ceiling),
                        r.image_size <= ceiling});
    r.wall_time_ms = elapsed_ms(start);
    return r;
}

MvPoly assemble_conc(const ConcFamily& fam) {
    const FieldPtr& field = fam.f.field_ptr();
    if (fam.f.nvars() != 2 || fam.g.nvars() != 2) throw InvalidArgument("F and G must be polynomials in (y, z)");
    if (!fam.g.field().same_field(*field) || !fam.a.ctx().same_field(*field)) throw ContextMismatch();
    if (fam.d < 1) throw InvalidArgument("the leading exponent d must be at least 1");
    MvPoly p(field, 3);
    p.add_term({static_cast<std::uint32_t>(fam.d), 0, 0}, fam.a.raw());
    p = p + fam.f.insert_variable(0) * MvPoly::variable(field, 3, 0) + fam.g.insert_variable(0);
    return p;
}

ExperimentReport conc_family_run(const ConcFamily& fam, std::span<const ElementSet> sets, const Sampling& sampling,
                                 const NicenessOptions& independence, const DeficiencyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const MvPoly p = assemble_conc(fam);
    const MvPoly pair[] = {fam.f, fam.g};
    IndependenceCheck check = check_independence(pair, independence);

    ExperimentReport r = deficiency_stat(p, sets, sampling, opts);
    r.kind = "conc-family";
    r.degree = fam.d;
    if (check.outcome == Independence::Dependent) {
        r.warnings.push_back("precondition violated: F and G are algebraically dependent (relation " +
                             check.relation->relation.to_string() + ", x standing for F and y for G)");
    } else if (check.outcome == Independence::Unknown) {
        r.warnings.push_back("precondition not certified: independence of F and G is inconclusive up to degree " +
                             std::to_string(check.bound_used));
    }
    r.precondition = std::move(check);
    r.wall_time_ms = elapsed_ms(start);
    return r;
}

}  // namespace ffx
