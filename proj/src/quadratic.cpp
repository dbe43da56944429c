#include <map>
#include <sstream>

#include "ffexpand/linalg.hpp"
#include "ffexpand/rng.hpp"
#include "ffexpand/structure.hpp"

namespace ffx {
namespace {

// Coefficient layout used by the scans: x^2, y^2, z^2, yz, xz, xy, x, y, z.
const std::array<Exponents, 9> kQuadraticMonomials = {
    Exponents{2, 0, 0}, Exponents{0, 2, 0}, Exponents{0, 0, 2}, Exponents{0, 1, 1}, Exponents{1, 0, 1},
    Exponents{1, 1, 0}, Exponents{1, 0, 0}, Exponents{0, 1, 0}, Exponents{0, 0, 1},
};

MvPoly quadratic_from_coeffs(const FieldPtr& field, const std::array<Raw, 9>& c) {
    MvPoly q(field, 3);
    for (std::size_t i = 0; i < 9; ++i) q.add_term(kQuadraticMonomials[i], c[i]);
    return q;
}

void scan_one(const MvPoly& q, const NicenessOptions& opts, QuadraticScanSummary& s) {
    ++s.scanned;
    const QuadraticClassification cls = classify_quadratic(q);
    const NicenessVerdict verdict = is_nice(q, opts);
    (cls.nice ? s.classified_nice : s.classified_not_nice)++;
    switch (verdict.status) {
        case NiceStatus::Nice: ++s.verdict_nice; break;
        case NiceStatus::NotNice: ++s.verdict_not_nice; break;
        case NiceStatus::Inconclusive: ++s.verdict_inconclusive; break;
    }
    const bool agree = (verdict.status == NiceStatus::Nice) == cls.nice && verdict.status != NiceStatus::Inconclusive;
    if (!agree) {
        ++s.disagreements;
        if (s.examples_of_disagreement.size() < 10) {
            s.examples_of_disagreement.push_back(q.to_string() + " (classifier " + (cls.nice ? "Nice" : "NotNice") +
                                                 ", verdict " + to_string(verdict.status) + ")");
        }
    }
    // Dependent (P_1, P_2) pairs: with constants removed, P_2 must be a*L^2 + b*L.
    for (const auto& dc : verdict.checks) {
        if (dc.check.outcome != Independence::Dependent || dc.decomposition.parts.size() != 2) continue;
        const MvPoly& p1 = dc.decomposition.parts[0];
        const MvPoly& p2 = dc.decomposition.parts[1];
        const MvPoly l = p1 - MvPoly::constant(p1.field_ptr(), p1.nvars(), p1.constant_term().raw());
        if (l.is_zero()) continue;
        const MvPoly q2 = p2 - MvPoly::constant(p2.field_ptr(), p2.nvars(), p2.constant_term().raw());
        ++s.square_fit_checked;
        if (!fit_square_relation(l, q2)) ++s.square_fit_failed;
    }
}

}  // namespace

std::array<bool, 3> variable_occurrence(const MvPoly& q) {
    if (q.nvars() != 3) throw InvalidArgument("ternary polynomial expected");
    return {q.uses_variable(0), q.uses_variable(1), q.uses_variable(2)};
}

bool genuinely_ternary(const MvPoly& q) {
    const auto occ = variable_occurrence(q);
    return occ[0] && occ[1] && occ[2];
}

const char* to_string(QuadraticReason r) {
    switch (r) {
        case QuadraticReason::Generic: return "generic";
        case QuadraticReason::AbsentVariable: return "absent_variable";
        case QuadraticReason::NoCrossTerms: return "no_cross_terms";
        case QuadraticReason::CompletedSquare: return "completed_square";
    }
    return "?";
}

QuadraticClassification classify_quadratic(const MvPoly& q) {
    if (q.nvars() != 3) throw InvalidArgument("classify_quadratic needs a ternary polynomial");
    if (q.total_degree() != 2) throw InvalidArgument("classify_quadratic needs a polynomial of degree 2");
    const FieldCtx& f = q.field();
    if (f.characteristic() == 2) throw DomainError("classify_quadratic requires odd q");

    QuadraticClassification out;
    const auto occ = variable_occurrence(q);
    for (std::size_t i = 0; i < 3; ++i) {
        if (!occ[i]) {
            out.reason = QuadraticReason::AbsentVariable;
            out.absent_variable = i;
            return out;
        }
    }

    // Symmetric data: sq[i] = coeff of x_i^2, cross[i][j] = coeff of x_i x_j, lin[i] = coeff of x_i.
    std::array<FieldElement, 3> sq, lin;
    std::array<std::array<FieldElement, 3>, 3> cross;
    for (std::size_t i = 0; i < 3; ++i) {
        Exponents e(3, 0);
        e[i] = 2;
        sq[i] = q.coeff(e);
        e[i] = 1;
        lin[i] = q.coeff(e);
        for (std::size_t j = 0; j < 3; ++j) {
            if (i == j) continue;
            Exponents c(3, 0);
            c[i] = c[j] = 1;
            cross[i][j] = q.coeff(c);
        }
    }
    if (cross[0][1].is_zero() && cross[0][2].is_zero() && cross[1][2].is_zero()) {
        out.reason = QuadraticReason::NoCrossTerms;
        return out;
    }

    out.nice = true;
    out.reason = QuadraticReason::Generic;

    // Rank-one test: quadratic part == e * L^2 with L = d1 x + d2 y + d3 z.
    // Normalise d_i = 1 at a square term; then e = a_i and d_j = b_ij / (2e).
    std::size_t pivot = 3;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!sq[i].is_zero()) {
            pivot = i;
            break;
        }
    }
    if (pivot == 3) return out;  // zero diagonal with a cross term: rank >= 2
    const FieldElement e = sq[pivot];
    const FieldElement two = f.from_integer(2);
    const FieldElement two_e_inv = (two * e).inv();
    std::array<FieldElement, 3> d;
    for (std::size_t j = 0; j < 3; ++j) d[j] = (j == pivot) ? f.one() : cross[pivot][j] * two_e_inv;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!(sq[i] == e * d[i] * d[i])) return out;
        for (std::size_t j = i + 1; j < 3; ++j) {
            if (!(cross[i][j] == two * e * d[i] * d[j])) return out;
        }
    }
    // Linear part must be 2 e u L.
    const FieldElement lambda = lin[pivot];
    for (std::size_t j = 0; j < 3; ++j) {
        if (!(lin[j] == lambda * d[j])) return out;
    }
    const FieldElement u = lambda * two_e_inv;
    const FieldElement v = q.constant_term() - e * u * u;

    MvPoly square = MvPoly::constant(q.field_ptr(), 3, u.raw());
    for (std::size_t j = 0; j < 3; ++j) square = square + MvPoly::variable(q.field_ptr(), 3, j).scale(d[j]);
    const MvPoly rebuilt = (square * square).scale(e) + MvPoly::constant(q.field_ptr(), 3, v.raw());
    if (!(rebuilt == q)) throw Error("completed-square reconstruction mismatch");

    out.nice = false;
    out.reason = QuadraticReason::CompletedSquare;
    out.square = QuadraticClassification::Square{e, u, v, d};
    return out;
}

std::optional<std::pair<FieldElement, FieldElement>> fit_square_relation(const MvPoly& l, const MvPoly& q) {
    // Kernel of [l^2 | l | q]; a vector with nonzero last entry gives q = a l^2 + b l.
    const MvPoly l2 = l * l;
    const MvPoly* cols[3] = {&l2, &l, &q};
    std::map<Exponents, std::size_t> rows;
    for (const auto* p : cols) {
        for (const auto& [e, c] : p->terms()) rows.try_emplace(e, rows.size());
    }
    const FieldCtx& f = q.field();
    if (rows.empty()) return std::pair{f.zero(), f.zero()};
    MatrixGF m(q.field_ptr(), rows.size(), 3);
    for (std::size_t c = 0; c < 3; ++c) {
        for (const auto& [e, v] : cols[c]->terms()) m.at(rows.at(e), c) = v;
    }
    for (const auto& v : kernel(m)) {
        if (v[2] == 0) continue;
        const FieldElement scale = -FieldElement(f, v[2]).inv();
        return std::pair{FieldElement(f, v[0]) * scale, FieldElement(f, v[1]) * scale};
    }
    return std::nullopt;
}

QuadraticScanSummary exhaustive_quadratic_scan(const FieldPtr& field, const NicenessOptions& opts) {
    QuadraticScanSummary s;
    const Raw q = field->order();
    std::array<Raw, 9> c{};
    while (true) {
        if (c[0] || c[1] || c[2] || c[3] || c[4] || c[5]) {
            scan_one(quadratic_from_coeffs(field, c), opts, s);
        } else {
            ++s.skipped_low_degree;
        }
        std::size_t i = 0;
        while (i < 9 && ++c[i] == q) c[i++] = 0;
        if (i == 9) break;
    }
    return s;
}

QuadraticScanSummary random_quadratic_scan(const FieldPtr& field, std::uint64_t count, std::uint64_t seed,
                                           const NicenessOptions& opts) {
    QuadraticScanSummary s;
    Rng rng(seed);
    std::array<Raw, 9> c{};
    for (std::uint64_t n = 0; n < count; ++n) {
        do {
            for (auto& v : c) v = static_cast<Raw>(rng.uniform(field->order()));
        } while (!(c[0] || c[1] || c[2] || c[3] || c[4] || c[5]));
        scan_one(quadratic_from_coeffs(field, c), opts, s);
    }
    return s;
}

}  // namespace ffx
