#pragma once

// Niceness machinery.
//
// A polynomial P of degree d in n variables is nice when, for some choice of
// distinguished variable x_n, the parts P_1..P_d of
//     P = a x_n^d + sum_k P_k x_n^{d-k}
// are algebraically independent. Independence is certified by a nonzero
// Jacobian minor; dependence by an explicit annihilating polynomial found
// through linear algebra. Neither certificate is complete in positive
// characteristic, so the verdict can be Inconclusive.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffexpand/mvpoly.hpp"

namespace ffx {

MvPoly jacobian_det(std::span<const MvPoly> polys);

/// Q with Q(P_1, ..., P_m) == 0 identically.
struct AnnihilatorRelation {
    std::vector<MvPoly> polys;
    MvPoly relation;  // in polys.size() variables

    int degree() const noexcept { return relation.total_degree(); }
    /// Symbolic check: relation is nonzero and expands to zero after substitution.
    bool verify() const;
};

struct AnnihilatorLimits {
    std::size_t max_columns = 5000;
    std::size_t max_rows = 200000;
};

/// Searches for a nonzero Q of total degree <= bound with Q(polys) == 0.
///
/// Unknowns are the coefficients of Q over monomials in graded order; each
/// monomial u^alpha contributes the column of coefficients of prod P_i^alpha_i.
/// The degree is escalated 1, 2, 4, ... up to bound, and the kernel vector of
/// the smallest free column is taken, so the returned relation has the
/// smallest possible leading monomial and that monomial has coefficient 1.
/// Throws CapExceeded when the system outgrows `limits`.
std::optional<AnnihilatorRelation> find_annihilator(std::span<const MvPoly> polys, int bound,
                                                    const AnnihilatorLimits& limits = {});

/// Smallest M >= 1 with C(M+m, m) > C(D*M+n, n): the count of candidate
/// coefficients for a degree-M relation among m polynomials exceeds the
/// count of equations from degree-D polynomials in n variables. None when
/// m <= n, where no such M exists.
std::optional<int> perron_bound(int m, int n, int D);

/// Product of the input degrees (each at least 1), lowered until the system
/// has at most max_columns unknowns.
int default_annihilator_bound(std::span<const MvPoly> polys, std::size_t max_columns);

/// Number of monomials of total degree <= degree in nvars variables.
std::uint64_t monomial_count(int nvars, int degree);

struct JacobianWitness {
    MvPoly determinant;
    /// Variables (of the polynomials' ring) whose partials form the nonzero minor.
    std::vector<std::size_t> columns;
};

enum class Independence { Independent, Dependent, Unknown };

struct IndependenceCheck {
    Independence outcome = Independence::Unknown;
    std::optional<JacobianWitness> jacobian;
    std::optional<AnnihilatorRelation> relation;
    int bound_used = 0;
};

struct NicenessOptions {
    /// Overrides the default annihilator bound.
    std::optional<int> bound;
    AnnihilatorLimits limits;
};

/// Decides independence of polys as far as the certificates allow: a zero
/// polynomial is an immediate dependence; a nonzero maximal Jacobian minor
/// proves independence; otherwise the annihilator search runs.
IndependenceCheck check_independence(std::span<const MvPoly> polys, const NicenessOptions& opts = {});

enum class NiceStatus { Nice, NotNice, Inconclusive };

const char* to_string(NiceStatus s);
const char* to_string(Independence s);

struct DistinguishedCheck {
    std::size_t variable = 0;
    Decomposition decomposition;
    IndependenceCheck check;
};

struct NicenessVerdict {
    NiceStatus status = NiceStatus::Inconclusive;
    int degree = 0;
    /// Variable whose parts are independent (Nice only).
    std::optional<std::size_t> distinguished;
    /// One entry per distinguished variable examined. The search starts at the
    /// last variable (x_n in P = a x_n^d + ...) and moves down; a Nice verdict
    /// stops at the first independent choice.
    std::vector<DistinguishedCheck> checks;
    int bound_used = 0;

    const JacobianWitness* witness() const;
};

NicenessVerdict is_nice(const MvPoly& p, const NicenessOptions& opts = {});

// Ternary quadratics -------------------------------------------------------

std::array<bool, 3> variable_occurrence(const MvPoly& q);
/// True iff x, y and z each occur with nonzero coefficient.
bool genuinely_ternary(const MvPoly& q);

enum class QuadraticReason { Generic, AbsentVariable, NoCrossTerms, CompletedSquare };
const char* to_string(QuadraticReason r);

struct QuadraticClassification {
    bool nice = false;
    QuadraticReason reason = QuadraticReason::Generic;
    std::optional<std::size_t> absent_variable;
    /// Completed-square data: Q = e * (d1 x + d2 y + d3 z + u)^2 + v.
    struct Square {
        FieldElement e, u, v;
        std::array<FieldElement, 3> linear;
    };
    std::optional<Square> square;
};

/// Structural niceness test for a ternary quadratic over odd q: NotNice iff
/// a variable is missing, there are no cross terms, or Q is a shifted
/// scalar multiple of a squared linear form. Throws DomainError for even q
/// and InvalidArgument unless nvars == 3 and deg Q == 2.
QuadraticClassification classify_quadratic(const MvPoly& q);

/// a, b with q == a*l^2 + b*l, if they exist.
std::optional<std::pair<FieldElement, FieldElement>> fit_square_relation(const MvPoly& l, const MvPoly& q);

struct QuadraticScanSummary {
    std::uint64_t scanned = 0;
    std::uint64_t skipped_low_degree = 0;
    std::uint64_t classified_nice = 0;
    std::uint64_t classified_not_nice = 0;
    std::uint64_t verdict_nice = 0;
    std::uint64_t verdict_not_nice = 0;
    std::uint64_t verdict_inconclusive = 0;
    std::uint64_t disagreements = 0;
    /// Dependent (L, Q') part pairs checked against the q = aL^2 + bL shape, and failures.
    std::uint64_t square_fit_checked = 0;
    std::uint64_t square_fit_failed = 0;
    std::vector<std::string> examples_of_disagreement;

    bool agreement() const noexcept { return disagreements == 0 && verdict_inconclusive == 0; }
};

/// Every constant-free ternary quadratic over F_q (q^9 coefficient vectors);
/// vectors with zero quadratic part are counted as skipped.
QuadraticScanSummary exhaustive_quadratic_scan(const FieldPtr& field, const NicenessOptions& opts = {});
/// `count` seeded random constant-free ternary quadratics with nonzero quadratic part.
QuadraticScanSummary random_quadratic_scan(const FieldPtr& field, std::uint64_t count, std::uint64_t seed,
                                           const NicenessOptions& opts = {});

}  // namespace ffx
