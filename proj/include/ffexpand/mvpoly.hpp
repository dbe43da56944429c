#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffexpand/gf.hpp"

namespace ffx {

using Exponents = std::vector<std::uint32_t>;

/// Total degree reported for the zero polynomial; below every constant.
inline constexpr int kZeroDegree = -1;

/// Sparse multivariate polynomial over F_q.
///
/// Terms live in an ordered map keyed by exponent vector, so the term set is
/// canonical: no zero coefficients, no duplicate monomials, and two equal
/// polynomials have identical maps. Variables are 0-based.
class MvPoly {
public:
    using TermMap = std::map<Exponents, Raw>;

    MvPoly(FieldPtr field, std::size_t nvars);

    static MvPoly constant(FieldPtr field, std::size_t nvars, Raw c);
    static MvPoly variable(FieldPtr field, std::size_t nvars, std::size_t index);
    static MvPoly monomial(FieldPtr field, Exponents exps, Raw c);

    const FieldCtx& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t num_terms() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    int total_degree() const noexcept;
    int degree_in(std::size_t var) const;
    bool uses_variable(std::size_t var) const;

    FieldElement coeff(const Exponents& exps) const;
    /// Constant term.
    FieldElement constant_term() const;

    /// Adds c * monomial(exps) in place.
    void add_term(const Exponents& exps, Raw c);

    MvPoly operator-() const;
    friend MvPoly operator+(const MvPoly& a, const MvPoly& b);
    friend MvPoly operator-(const MvPoly& a, const MvPoly& b);
    friend MvPoly operator*(const MvPoly& a, const MvPoly& b);
    MvPoly scale(const FieldElement& c) const;
    MvPoly pow(std::uint32_t e) const;

    friend bool operator==(const MvPoly& a, const MvPoly& b) {
        return a.nvars_ == b.nvars_ && a.field_->same_field(*b.field_) && a.terms_ == b.terms_;
    }

    FieldElement eval(std::span<const FieldElement> point) const;
    Raw eval_raw(std::span<const Raw> point) const;

    /// Formal partial derivative in variable `var`.
    MvPoly partial(std::size_t var) const;

    /// Substitutes subs[i] for variable i. All substitutes share one arity,
    /// which becomes the arity of the result.
    MvPoly compose(std::span<const MvPoly> subs) const;

    /// Removes variable `var`, which must not occur.
    MvPoly drop_variable(std::size_t var) const;
    /// Inserts a fresh (unused) variable at position `var`.
    MvPoly insert_variable(std::size_t var) const;

    /// Canonical text: terms by descending total degree, then descending exponent vector.
    /// Parses back to an equal polynomial.
    std::string to_string() const;

private:
    void require_compatible(const MvPoly& o) const;

    FieldPtr field_;
    std::size_t nvars_;
    TermMap terms_;
};

/// g(P) for univariate g.
MvPoly compose_univariate(const MvPoly& g, const MvPoly& p);

/// Name of variable i in printed output: x, y, z when nvars <= 3, otherwise x1..xN.
std::string variable_name(std::size_t index, std::size_t nvars);

/// P = a * x_n^d + sum_k P_k * x_n^{d-k}, with x_n the distinguished variable.
struct Decomposition {
    std::size_t distinguished = 0;
    std::size_t nvars = 0;
    FieldElement leading;
    /// parts[k-1] = P_k, expressed in the remaining nvars-1 variables (original order).
    std::vector<MvPoly> parts;

    std::size_t degree() const noexcept { return parts.size(); }
    /// Re-embeds the parts and rebuilds the source polynomial.
    MvPoly reassemble() const;
};

/// Throws InvalidArgument for zero or constant P, or a bad index.
Decomposition decompose(const MvPoly& p, std::size_t distinguished);

/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' integer)?
///   primary := integer | variable | 't' | '(' expr ')'
/// Variables are x1..xN, with aliases x, y, z for nvars <= 3. 't' denotes the
/// generator of an extension field. Integers of any length are reduced mod p.
/// Throws ParseError with the offending position.
MvPoly parse_poly(std::string_view text, std::size_t nvars, FieldPtr field);

/// Highest variable index mentioned (x=1, y=2, z=3, xN=N); at least 1.
std::size_t infer_nvars(std::string_view text);

/// Per-variable exponent cap enforced by the parser.
inline constexpr std::uint32_t kMaxExponent = 1u << 16;

}  // namespace ffx
