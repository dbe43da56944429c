#pragma once

// Arithmetic in F_q, q = p^k.
//
// Elements are stored as a packed integer in [0, q): the base-p digits of the
// packed value are the coefficients (c0, c1, ..., c_{k-1}) of the residue
// c0 + c1 t + ... + c_{k-1} t^{k-1} modulo the field's defining polynomial.
// For k = 1 the packed value is simply the canonical representative in [0, p).
// This keeps every element fully reduced and makes enumeration order the
// odometer order on coefficient vectors.

#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffexpand/errors.hpp"

namespace ffx {

using Raw = std::uint32_t;

/// Largest supported field order. Keeps every packed element and q*q products
/// inside 64-bit arithmetic.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

class FieldCtx;
class FieldElement;
using FieldPtr = std::shared_ptr<const FieldCtx>;

bool is_prime(std::uint64_t n);

/// Irreducibility over F_p by trial division against every monic polynomial of
/// degree <= deg/2. `coeffs` is low-degree-first and must be monic.
bool is_irreducible(std::uint32_t p, std::span<const Raw> coeffs);

class FieldCtx {
public:
    /// Builds F_{p^k}. For k > 1 the modulus is the lexicographically smallest
    /// monic irreducible of degree k, comparing (c0, c1, ..., c_{k-1}) from c0.
    static FieldPtr create(std::uint32_t p, std::uint32_t k = 1);

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return k_; }
    std::uint32_t order() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return k_ == 1; }

    /// Monic defining polynomial, low-degree-first, length k+1. Empty for k = 1.
    const std::vector<Raw>& modulus() const noexcept { return modulus_; }

    /// "p" or "p^k".
    std::string spec() const;

    bool same_field(const FieldCtx& other) const noexcept {
        return this == &other || (p_ == other.p_ && k_ == other.k_);
    }

    // Raw arithmetic on packed values. Inputs must already be reduced.
    Raw add(Raw a, Raw b) const noexcept {
        if (k_ != 1) return add_ext(a, b);
        const Raw s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Raw sub(Raw a, Raw b) const noexcept {
        if (k_ != 1) return add_ext(a, neg_ext(b));
        return a >= b ? a - b : a + p_ - b;
    }
    Raw neg(Raw a) const noexcept {
        if (k_ != 1) return neg_ext(a);
        return a == 0 ? 0 : p_ - a;
    }
    Raw mul(Raw a, Raw b) const noexcept {
        if (k_ == 1) return static_cast<Raw>(std::uint64_t{a} * b % p_);
        if (a == 0 || b == 0) return 0;
        const std::uint32_t e = log_[a] + log_[b];
        return exp_[e >= q_ - 1 ? e - (q_ - 1) : e];
    }
    Raw inv(Raw a) const;  // throws DomainError on zero
    Raw pow(Raw a, std::uint64_t e) const noexcept;

    /// Image of an integer under Z -> F_p -> F_q.
    Raw from_int(std::int64_t v) const noexcept;
    /// Packs a coefficient vector (low-degree-first, length <= k), reducing each entry mod p.
    Raw from_coeffs(std::span<const std::int64_t> coeffs) const;
    std::vector<Raw> coeffs(Raw a) const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element(Raw packed) const;
    FieldElement from_integer(std::int64_t v) const;
    /// The class of t in F_p[t]/(modulus). Only for k > 1.
    FieldElement generator() const;

    /// All q elements in packed order: 0, 1, ..., q-1.
    std::vector<FieldElement> enumerate() const;

    /// Integer for prime-field elements; "(c0+c1*t+...)" style text for
    /// extension elements outside the prime subfield.
    std::string format(Raw a) const;

private:
    FieldCtx(std::uint32_t p, std::uint32_t k, std::vector<Raw> modulus);

    Raw add_ext(Raw a, Raw b) const noexcept;
    Raw neg_ext(Raw a) const noexcept;
    /// Product through polynomial reduction; used to build the tables.
    Raw mul_poly(Raw a, Raw b) const noexcept;
    void build_tables();

    Raw pack(std::span<const Raw> digits) const noexcept;
    void unpack(Raw a, Raw* digits) const noexcept;

    std::uint32_t p_;
    std::uint32_t k_;
    std::uint32_t q_;
    std::vector<Raw> modulus_;
    // Discrete log and antilog for k > 1, relative to a primitive element.
    std::vector<std::uint32_t> log_;
    std::vector<Raw> exp_;
};

/// Parses "p" or "p^k". Throws InvalidArgument on malformed text, a
/// composite p, k < 1 or q above the cap.
FieldPtr parse_field_spec(std::string_view text);

/// An element of F_q. Holds a non-owning pointer to its field: the FieldCtx
/// must outlive every element created from it.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FieldCtx& ctx, Raw packed) : ctx_(&ctx), v_(packed) {}

    const FieldCtx& ctx() const { return *ctx_; }
    Raw raw() const noexcept { return v_; }
    bool is_zero() const noexcept { return v_ == 0; }
    std::vector<Raw> coeffs() const { return ctx_->coeffs(v_); }

    FieldElement inv() const { return {*ctx_, ctx_->inv(v_)}; }
    FieldElement pow(std::uint64_t e) const { return {*ctx_, ctx_->pow(v_, e)}; }

    FieldElement operator-() const { return {*ctx_, ctx_->neg(v_)}; }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {*a.ctx_, a.ctx_->add(a.v_, b.v_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {*a.ctx_, a.ctx_->sub(a.v_, b.v_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {*a.ctx_, a.ctx_->mul(a.v_, b.v_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {*a.ctx_, a.ctx_->mul(a.v_, a.ctx_->inv(b.v_))};
    }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    /// Equal iff same field and same reduced representation.
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.v_ == b.v_ && a.ctx_ != nullptr && b.ctx_ != nullptr &&
               a.ctx_->same_field(*b.ctx_);
    }

    friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
        return os << x.ctx_->format(x.v_);
    }

private:
    void check(const FieldElement& o) const {
        if (ctx_ == nullptr || o.ctx_ == nullptr || !ctx_->same_field(*o.ctx_)) {
            throw ContextMismatch();
        }
    }

    const FieldCtx* ctx_ = nullptr;
    Raw v_ = 0;
};

/// r(x): the unique integer in [0, p-1] reducing to x. Prime fields only.
std::uint32_t canon_rep(const FieldElement& x);

}  // namespace ffx
