#include "ffexpand/mvpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ffx {

MvPoly::MvPoly(FieldPtr field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {
    if (!field_) throw InvalidArgument("polynomial requires a field");
    if (nvars_ == 0) throw InvalidArgument("polynomial requires at least one variable");
}

MvPoly MvPoly::constant(FieldPtr field, std::size_t nvars, Raw c) {
    MvPoly p(std::move(field), nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MvPoly MvPoly::variable(FieldPtr field, std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw InvalidArgument("variable index " + std::to_string(index) + " out of range");
    MvPoly p(std::move(field), nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

MvPoly MvPoly::monomial(FieldPtr field, Exponents exps, Raw c) {
    const std::size_t n = exps.size();
    MvPoly p(std::move(field), n);
    p.add_term(exps, c);
    return p;
}

bool MvPoly::is_constant() const noexcept {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](auto e) { return e == 0; }));
}

int MvPoly::total_degree() const noexcept {
    int deg = kZeroDegree;
    for (const auto& [e, c] : terms_) {
        deg = std::max(deg, static_cast<int>(std::accumulate(e.begin(), e.end(), std::uint64_t{0})));
    }
    return deg;
}

int MvPoly::degree_in(std::size_t var) const {
    if (var >= nvars_) throw InvalidArgument("variable index " + std::to_string(var) + " out of range");
    int deg = kZeroDegree;
    for (const auto& [e, c] : terms_) deg = std::max(deg, static_cast<int>(e[var]));
    return deg;
}

bool MvPoly::uses_variable(std::size_t var) const { return degree_in(var) > 0; }

FieldElement MvPoly::coeff(const Exponents& exps) const {
    const auto it = terms_.find(exps);
    return {*field_, it == terms_.end() ? 0 : it->second};
}

FieldElement MvPoly::constant_term() const { return coeff(Exponents(nvars_, 0)); }

void MvPoly::add_term(const Exponents& exps, Raw c) {
    if (exps.size() != nvars_) throw InvalidArgument("exponent vector has wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exps, c);
    if (!inserted) {
        it->second = field_->add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

void MvPoly::require_compatible(const MvPoly& o) const {
    if (!field_->same_field(*o.field_)) throw ContextMismatch();
    if (nvars_ != o.nvars_) {
        throw InvalidArgument("polynomials have different numbers of variables (" + std::to_string(nvars_) +
                              " vs " + std::to_string(o.nvars_) + ")");
    }
}

MvPoly MvPoly::operator-() const {
    MvPoly out = *this;
    for (auto& [e, c] : out.terms_) c = field_->neg(c);
    return out;
}

MvPoly operator+(const MvPoly& a, const MvPoly& b) {
    a.require_compatible(b);
    MvPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

MvPoly operator-(const MvPoly& a, const MvPoly& b) { return a + (-b); }

MvPoly operator*(const MvPoly& a, const MvPoly& b) {
    a.require_compatible(b);
    const FieldCtx& f = *a.field_;
    MvPoly out(a.field_, a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, f.mul(ca, cb));
        }
    }
    return out;
}

MvPoly MvPoly::scale(const FieldElement& c) const {
    if (!c.ctx().same_field(*field_)) throw ContextMismatch();
    MvPoly out(field_, nvars_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, field_->mul(v, c.raw()));
    return out;
}

MvPoly MvPoly::pow(std::uint32_t e) const {
    MvPoly result = constant(field_, nvars_, 1);
    MvPoly base = *this;
    while (e != 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return result;
}

FieldElement MvPoly::eval(std::span<const FieldElement> point) const {
    if (point.size() != nvars_) {
        throw InvalidArgument("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                              std::to_string(nvars_));
    }
    std::vector<Raw> raw(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (!point[i].ctx().same_field(*field_)) throw ContextMismatch();
        raw[i] = point[i].raw();
    }
    return {*field_, eval_raw(raw)};
}

Raw MvPoly::eval_raw(std::span<const Raw> point) const {
    const FieldCtx& f = *field_;
    Raw acc = 0;
    for (const auto& [e, c] : terms_) {
        Raw t = c;
        for (std::size_t i = 0; i < nvars_ && t != 0; ++i) {
            if (e[i] != 0) t = f.mul(t, f.pow(point[i], e[i]));
        }
        acc = f.add(acc, t);
    }
    return acc;
}

MvPoly MvPoly::partial(std::size_t var) const {
    if (var >= nvars_) throw InvalidArgument("variable index " + std::to_string(var) + " out of range");
    MvPoly out(field_, nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        const Raw mult = field_->from_int(e[var]);
        if (mult == 0) continue;
        Exponents d = e;
        --d[var];
        out.add_term(d, field_->mul(c, mult));
    }
    return out;
}

MvPoly MvPoly::compose(std::span<const MvPoly> subs) const {
    if (subs.size() != nvars_) {
        throw InvalidArgument("composition needs " + std::to_string(nvars_) + " substitutes, got " +
                              std::to_string(subs.size()));
    }
    const std::size_t m = subs[0].nvars();
    for (const auto& s : subs) {
        if (!s.field().same_field(*field_)) throw ContextMismatch();
        if (s.nvars() != m) throw InvalidArgument("substitutes have different numbers of variables");
    }
    // powers[i][e] = subs[i]^e, filled lazily.
    std::vector<std::vector<MvPoly>> powers(nvars_);
    auto power = [&](std::size_t i, std::uint32_t e) -> const MvPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(field_, m, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * subs[i]);
        return cache[e];
    };
    MvPoly out(field_, m);
    for (const auto& [e, c] : terms_) {
        MvPoly term = constant(field_, m, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] != 0) term = term * power(i, e[i]);
        }
        out = out + term;
    }
    return out;
}

MvPoly MvPoly::drop_variable(std::size_t var) const {
    if (var >= nvars_) throw InvalidArgument("variable index " + std::to_string(var) + " out of range");
    if (nvars_ == 1) throw InvalidArgument("cannot drop the only variable");
    MvPoly out(field_, nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        if (e[var] != 0) throw InvalidArgument("dropped variable occurs in the polynomial");
        Exponents d = e;
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(var));
        out.terms_.emplace(std::move(d), c);
    }
    return out;
}

MvPoly MvPoly::insert_variable(std::size_t var) const {
    if (var > nvars_) throw InvalidArgument("variable index " + std::to_string(var) + " out of range");
    MvPoly out(field_, nvars_ + 1);
    for (const auto& [e, c] : terms_) {
        Exponents d = e;
        d.insert(d.begin() + static_cast<std::ptrdiff_t>(var), 0);
        out.terms_.emplace(std::move(d), c);
    }
    return out;
}

std::string variable_name(std::size_t index, std::size_t nvars) {
    if (nvars <= 3) return std::string(1, "xyz"[index]);
    return "x" + std::to_string(index + 1);
}

std::string MvPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const TermMap::value_type*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    auto deg = [](const Exponents& e) { return std::accumulate(e.begin(), e.end(), std::uint64_t{0}); };
    std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) {
        const auto da = deg(a->first), db = deg(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        if (!first) os << " + ";
        first = false;
        const Exponents& e = t->first;
        const bool is_const = deg(e) == 0;
        bool need_star = false;
        if (t->second != 1 || is_const) {
            os << field_->format(t->second);
            need_star = true;
        }
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << '*';
            os << variable_name(i, nvars_);
            if (e[i] > 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

MvPoly compose_univariate(const MvPoly& g, const MvPoly& p) {
    if (g.nvars() != 1) throw InvalidArgument("outer polynomial must be univariate");
    const MvPoly subs[] = {p};
    return g.compose(subs);
}

MvPoly Decomposition::reassemble() const {
    if (parts.empty()) throw InvalidArgument("empty decomposition");
    const FieldPtr& field = parts[0].field_ptr();
    const std::size_t d = parts.size();
    Exponents lead(nvars, 0);
    lead[distinguished] = static_cast<std::uint32_t>(d);
    MvPoly out = MvPoly::monomial(field, lead, leading.raw());
    const MvPoly xn = MvPoly::variable(field, nvars, distinguished);
    for (std::size_t k = 1; k <= d; ++k) {
        out = out + parts[k - 1].insert_variable(distinguished) * xn.pow(static_cast<std::uint32_t>(d - k));
    }
    return out;
}

Decomposition decompose(const MvPoly& p, std::size_t distinguished) {
    const std::size_t n = p.nvars();
    if (distinguished >= n) {
        throw InvalidArgument("distinguished variable " + std::to_string(distinguished) + " out of range");
    }
    if (n < 2) throw InvalidArgument("decomposition needs at least two variables");
    const int d = p.total_degree();
    if (d < 1) throw InvalidArgument("cannot decompose a zero or constant polynomial");

    Decomposition out;
    out.distinguished = distinguished;
    out.nvars = n;
    out.leading = p.field().zero();
    out.parts.assign(static_cast<std::size_t>(d), MvPoly(p.field_ptr(), n - 1));
    for (const auto& [e, c] : p.terms()) {
        const int j = static_cast<int>(e[distinguished]);
        if (j == d) {
            // Only the pure power x_n^d can have this exponent.
            out.leading = FieldElement(p.field(), c);
            continue;
        }
        Exponents rest = e;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(distinguished));
        // Coefficient of x_n^j belongs to P_{d-j}.
        out.parts[static_cast<std::size_t>(d - j - 1)].add_term(rest, c);
    }
    for (std::size_t k = 1; k <= out.parts.size(); ++k) {
        if (out.parts[k - 1].total_degree() > static_cast<int>(k)) {
            throw Error("decomposition part exceeds its degree bound");  // impossible when deg P = d
        }
    }
    return out;
}

}  // namespace ffx
