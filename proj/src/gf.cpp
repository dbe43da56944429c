#include "ffexpand/gf.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ffx {
namespace {

// Dense polynomials over F_p, low-degree-first, no trailing zeros (zero = empty).
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid on integers; a is nonzero mod p.
    std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(a % p);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t qt = r0 / r1;
        std::int64_t t = r0 - qt * r1;
        r0 = r1;
        r1 = t;
        t = s0 - qt * s1;
        s0 = s1;
        s1 = t;
    }
    std::int64_t s = s0 % static_cast<std::int64_t>(p);
    if (s < 0) s += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(s);
}

// Quotient and remainder of a by nonzero b.
void divmod(const Poly& a, const Poly& b, std::uint64_t p, Poly& quot, Poly& rem) {
    rem = a;
    trim(rem);
    quot.clear();
    if (rem.size() < b.size()) return;
    quot.assign(rem.size() - b.size() + 1, 0);
    const std::uint64_t lead_inv = inv_mod(b.back(), p);
    for (std::size_t i = rem.size(); i-- >= b.size();) {
        const std::uint64_t c = rem[i] * lead_inv % p;
        if (c == 0) continue;
        const std::size_t shift = i - (b.size() - 1);
        quot[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) {
            rem[shift + j] = (rem[shift + j] + p - c * b[j] % p) % p;
        }
    }
    trim(rem);
    trim(quot);
}

Poly poly_mul_sub(const Poly& s0, const Poly& qt, const Poly& s1, std::uint64_t p) {
    // s0 - qt * s1
    Poly out(std::max(s0.size(), qt.size() + s1.size()), 0);
    std::copy(s0.begin(), s0.end(), out.begin());
    for (std::size_t i = 0; i < qt.size(); ++i) {
        for (std::size_t j = 0; j < s1.size(); ++j) {
            out[i + j] = (out[i + j] + p - qt[i] * s1[j] % p) % p;
        }
    }
    trim(out);
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_irreducible(std::uint32_t p, std::span<const Raw> coeffs) {
    Poly f(coeffs.begin(), coeffs.end());
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    Poly quot, rem;
    // Every monic divisor candidate of degree e, coefficients in odometer order.
    for (std::size_t e = 1; e <= deg / 2; ++e) {
        Poly g(e + 1, 0);
        g[e] = 1;
        while (true) {
            divmod(f, g, p, quot, rem);
            if (rem.empty()) return false;
            std::size_t i = 0;
            while (i < e && ++g[i] == p) g[i++] = 0;
            if (i == e) break;
        }
    }
    return true;
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t k, std::vector<Raw> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
    for (std::uint32_t i = 0; i < k; ++i) q_ *= p;
    if (k > 1) build_tables();
}

void FieldCtx::build_tables() {
    const std::uint32_t n = q_ - 1;
    std::vector<std::uint32_t> primes;
    for (std::uint32_t m = n, d = 2; m > 1; ++d) {
        if (d * d > m) d = m;
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    auto slow_pow = [&](Raw a, std::uint64_t e) {
        Raw r = 1;
        for (; e != 0; e >>= 1, a = mul_poly(a, a)) {
            if (e & 1) r = mul_poly(r, a);
        }
        return r;
    };
    Raw g = p_;  // t first, then the packed successors
    for (;; ++g) {
        bool primitive = true;
        for (std::uint32_t r : primes) primitive = primitive && slow_pow(g, n / r) != 1;
        if (primitive) break;
    }
    log_.assign(q_, 0);
    exp_.assign(n, 0);
    Raw x = 1;
    for (std::uint32_t e = 0; e < n; ++e) {
        exp_[e] = x;
        log_[x] = e;
        x = mul_poly(x, g);
    }
}

FieldPtr FieldCtx::create(std::uint32_t p, std::uint32_t k) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw InvalidArgument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) {
            throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(k) +
                                  " exceeds the cap 2^20");
        }
    }
    std::vector<Raw> modulus;
    if (k > 1) {
        // Lexicographic on (c0, ..., c_{k-1}) with c0 most significant: walk the
        // odometer with the last coefficient spinning fastest.
        std::vector<Raw> cand(k + 1, 0);
        cand[k] = 1;
        bool found = false;
        while (!found) {
            if (is_irreducible(p, cand)) {
                found = true;
                break;
            }
            std::size_t i = k;
            while (i > 0 && ++cand[i - 1] == p) cand[--i] = 0;
            if (i == 0) break;
        }
        if (!found) throw Error("no irreducible polynomial found");  // unreachable for prime p
        modulus = std::move(cand);
    }
    return FieldPtr(new FieldCtx(p, k, std::move(modulus)));
}

std::string FieldCtx::spec() const {
    return k_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(k_);
}

Raw FieldCtx::pack(std::span<const Raw> digits) const noexcept {
    Raw v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * p_ + digits[i];
    return v;
}

void FieldCtx::unpack(Raw a, Raw* digits) const noexcept {
    for (std::uint32_t i = 0; i < k_; ++i) {
        digits[i] = a % p_;
        a /= p_;
    }
}

Raw FieldCtx::add_ext(Raw a, Raw b) const noexcept {
    if (p_ == 2) return a ^ b;
    Raw out = 0, scale = 1;
    while (a != 0 || b != 0) {
        Raw d = a % p_ + b % p_;
        if (d >= p_) d -= p_;
        out += d * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

Raw FieldCtx::neg_ext(Raw a) const noexcept {
    if (p_ == 2) return a;
    Raw out = 0, scale = 1;
    while (a != 0) {
        const Raw d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * scale;
        scale *= p_;
        a /= p_;
    }
    return out;
}

Raw FieldCtx::mul_poly(Raw a, Raw b) const noexcept {
    // k <= 20, so fixed-size scratch suffices.
    Raw da[20], db[20];
    std::uint64_t prod[40] = {};
    unpack(a, da);
    unpack(b, db);
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
    }
    // Reduce by the monic modulus from the top down.
    for (std::uint32_t i = 2 * k_ - 1; i-- > k_;) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        const std::uint32_t shift = i - k_;
        for (std::uint32_t j = 0; j < k_; ++j) {
            prod[shift + j] = (prod[shift + j] + (p_ - c) * modulus_[j]) % p_;
        }
    }
    Raw out = 0;
    for (std::uint32_t i = k_; i-- > 0;) out = out * p_ + static_cast<Raw>(prod[i]);
    return out;
}

Raw FieldCtx::inv(Raw a) const {
    if (a == 0) throw DomainError("inverse of zero");
    if (k_ == 1) return static_cast<Raw>(inv_mod(a, p_));
    // Extended Euclid in F_p[t]: s * a == gcd (a nonzero constant) mod modulus.
    Poly r0(modulus_.begin(), modulus_.end());
    Poly r1(k_);
    {
        Raw d[20];
        unpack(a, d);
        for (std::uint32_t i = 0; i < k_; ++i) r1[i] = d[i];
        trim(r1);
    }
    Poly s0, s1{1};
    Poly quot, rem;
    while (!r1.empty()) {
        divmod(r0, r1, p_, quot, rem);
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly next = poly_mul_sub(s0, quot, s1, p_);
        s0 = std::move(s1);
        s1 = std::move(next);
    }
    const std::uint64_t c_inv = inv_mod(r0[0], p_);
    std::vector<Raw> digits(k_, 0);
    for (std::size_t i = 0; i < s0.size() && i < k_; ++i) digits[i] = static_cast<Raw>(s0[i] * c_inv % p_);
    return pack(digits);
}

Raw FieldCtx::pow(Raw a, std::uint64_t e) const noexcept {
    Raw result = 1, base = a;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Raw FieldCtx::from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Raw>(r);
}

Raw FieldCtx::from_coeffs(std::span<const std::int64_t> coeffs) const {
    if (coeffs.size() > k_) {
        throw InvalidArgument("coefficient vector of length " + std::to_string(coeffs.size()) +
                              " exceeds extension degree " + std::to_string(k_));
    }
    std::vector<Raw> digits(k_, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) digits[i] = from_int(coeffs[i]);
    return pack(digits);
}

std::vector<Raw> FieldCtx::coeffs(Raw a) const {
    std::vector<Raw> d(k_);
    unpack(a, d.data());
    return d;
}

FieldElement FieldCtx::zero() const { return {*this, 0}; }
FieldElement FieldCtx::one() const { return {*this, 1}; }

FieldElement FieldCtx::element(Raw packed) const {
    if (packed >= q_) throw InvalidArgument("packed value " + std::to_string(packed) + " out of range");
    return {*this, packed};
}

FieldElement FieldCtx::from_integer(std::int64_t v) const { return {*this, from_int(v)}; }

FieldElement FieldCtx::generator() const {
    if (k_ == 1) throw InvalidArgument("prime field has no extension generator");
    return {*this, p_};
}

std::vector<FieldElement> FieldCtx::enumerate() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (Raw v = 0; v < q_; ++v) out.emplace_back(*this, v);
    return out;
}

std::string FieldCtx::format(Raw a) const {
    if (a < p_) return std::to_string(a);
    const auto d = coeffs(a);
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (d[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << d[i];
            continue;
        }
        if (d[i] != 1) os << d[i] << '*';
        os << 't';
        if (i > 1) os << '^' << i;
    }
    os << ')';
    return os.str();
}

FieldPtr parse_field_spec(std::string_view text) {
    auto parse_uint = [&](std::string_view s, std::uint64_t& out) {
        if (s.empty()) return false;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
    };
    std::uint64_t p = 0, k = 1;
    const auto caret = text.find('^');
    const bool ok = caret == std::string_view::npos
                        ? parse_uint(text, p)
                        : parse_uint(text.substr(0, caret), p) && parse_uint(text.substr(caret + 1), k);
    if (!ok) throw InvalidArgument("malformed field spec '" + std::string(text) + "' (expected p or p^k)");
    if (p > kMaxFieldOrder || k > 64) {
        throw InvalidArgument("field spec '" + std::string(text) + "' exceeds the cap 2^20");
    }
    return FieldCtx::create(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
}

std::uint32_t canon_rep(const FieldElement& x) {
    if (!x.ctx().is_prime_field()) {
        throw InvalidArgument("canonical representative is only defined over prime fields");
    }
    return x.raw();
}

}  // namespace ffx
