#include "doctest.h"

#include "ffexpand/structure.hpp"
#include "support.hpp"

using namespace ffx;
using ffx::testing::random_poly_total;

namespace {

MvPoly P(const char* text, const FieldPtr& f, std::size_t nvars = 3) { return parse_poly(text, nvars, f); }

// Plain 64-bit binomial, independent of the library's search.
std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// Pointwise check over all of F_q^n: a necessary condition for an identity,
// computed by plain evaluation rather than symbolic expansion.
bool vanishes_everywhere(const AnnihilatorRelation& rel) {
    const auto& f = rel.relation.field();
    const std::size_t n = rel.polys[0].nvars();
    std::vector<Raw> pt(n, 0), vals(rel.polys.size());
    while (true) {
        for (std::size_t i = 0; i < rel.polys.size(); ++i) vals[i] = rel.polys[i].eval_raw(pt);
        if (rel.relation.eval_raw(vals) != 0) return false;
        std::size_t i = 0;
        while (i < n && ++pt[i] == f.order()) pt[i++] = 0;
        if (i == n) return true;
    }
}

}  // namespace

TEST_CASE("jacobian determinant examples") {
    auto f5 = FieldCtx::create(5);
    {
        const MvPoly ps[] = {P("x+y", f5, 2), P("x*y", f5, 2)};
        CHECK(jacobian_det(ps) == P("x - y", f5, 2));
    }
    {
        const MvPoly ps[] = {MvPoly(f5, 2), P("x^2+y^2", f5, 2)};
        CHECK(jacobian_det(ps).is_zero());
    }
    {
        const MvPoly ps[] = {P("x^5", f5, 2), P("y", f5, 2)};
        CHECK(jacobian_det(ps).is_zero());
    }
    {
        const MvPoly ps[] = {P("x", f5, 3), P("y", f5, 3), P("z", f5, 3)};
        CHECK(jacobian_det(ps) == P("1", f5, 3));
        const MvPoly two[] = {P("x", f5, 3), P("y", f5, 3)};
        CHECK_THROWS_AS(jacobian_det(two), InvalidArgument);
    }
}

TEST_CASE("find_annihilator examples") {
    auto f5 = FieldCtx::create(5);
    {
        const MvPoly ps[] = {P("x*y", f5, 2), P("x^2*y^2", f5, 2)};
        const auto rel = find_annihilator(ps, 2);
        REQUIRE(rel);
        CHECK(rel->relation == P("x^2 - y", f5, 2));  // u^2 - v
        CHECK(rel->verify());
        CHECK(vanishes_everywhere(*rel));
    }
    {
        const MvPoly ps[] = {P("x", f5, 2), P("y", f5, 2)};
        CHECK_FALSE(find_annihilator(ps, 3));
    }
    {
        Rng rng(8);
        for (int i = 0; i < 20; ++i) {
            const MvPoly f = random_poly_total(f5, 2, 2, rng);
            if (f.total_degree() < 1) continue;
            const MvPoly ps[] = {f, f * f + f};
            const auto rel = find_annihilator(ps, 2);
            REQUIRE(rel);
            CHECK(rel->relation == P("x^2 + x - y", f5, 2));  // u^2 + u - v
            CHECK(rel->relation.compose(ps).is_zero());
            CHECK(vanishes_everywhere(*rel));
        }
    }
    {
        const MvPoly ps[] = {P("x", f5, 1)};
        CHECK_THROWS_AS(find_annihilator(ps, 0), InvalidArgument);
        const MvPoly many[] = {P("x", f5, 2), P("y", f5, 2), P("x*y", f5, 2)};
        CHECK_THROWS_AS(find_annihilator(many, 40, AnnihilatorLimits{100, 1000}), CapExceeded);
    }
}

TEST_CASE("perron_bound") {
    CHECK(perron_bound(2, 1, 1) == 1);
    CHECK(binom(3, 2) > binom(2, 1));
    for (int n = 1; n <= 3; ++n) {
        for (int D = 1; D <= 4; ++D) {
            const auto M = perron_bound(n + 1, n, D);
            REQUIRE(M);
            const std::uint64_t m = static_cast<std::uint64_t>(*M);
            CHECK(binom(m + n + 1, n + 1) > binom(D * m + n, n));
            if (m > 1) CHECK_FALSE(binom(m - 1 + n + 1, n + 1) > binom(D * (m - 1) + n, n));
        }
    }
    CHECK_FALSE(perron_bound(2, 2, 1));
}

TEST_CASE("default bound respects the column cap") {
    auto f5 = FieldCtx::create(5);
    const MvPoly ps[] = {P("x^3", f5, 2), P("y^4", f5, 2)};
    CHECK(default_annihilator_bound(ps, 5000) == 12);
    const int capped = default_annihilator_bound(ps, 20);
    CHECK(monomial_count(2, capped) <= 20);
    CHECK(monomial_count(2, capped + 1) > 20);
}

TEST_CASE("is_nice examples") {
    auto f5 = FieldCtx::create(5);
    {
        const auto v = is_nice(P("2*z^2 + (x+y)*z + x*y", f5));
        CHECK(v.status == NiceStatus::Nice);
        REQUIRE(v.distinguished);
        CHECK(*v.distinguished == 2);
        REQUIRE(v.witness());
        CHECK(v.witness()->determinant == P("x - y", f5, 2));
    }
    {
        const auto v = is_nice(P("x^2 + y^2 + z^2", f5));
        CHECK(v.status == NiceStatus::NotNice);
        REQUIRE(v.checks.size() == 3);
        for (const auto& c : v.checks) {
            CHECK(c.decomposition.parts[0].is_zero());
            REQUIRE(c.check.relation);
            CHECK(c.check.relation->relation == P("x", f5, 2));
            CHECK(c.check.relation->verify());
        }
    }
    {
        const auto v = is_nice(P("(x+y+z)^2", f5));
        CHECK(v.status == NiceStatus::NotNice);
        for (const auto& c : v.checks) {
            REQUIRE(c.check.relation);
            CHECK(c.check.relation->verify());
            CHECK(vanishes_everywhere(*c.check.relation));
        }
    }
    CHECK_THROWS_AS(is_nice(P("4", f5)), InvalidArgument);
    CHECK_THROWS_AS(is_nice(P("x^2", f5, 1)), InvalidArgument);
}

TEST_CASE("is_nice handles d != n-1 and characteristic effects") {
    auto f5 = FieldCtx::create(5);
    // d = 1 in three variables: P_1 = x + y is a single nonconstant polynomial.
    CHECK(is_nice(P("z + x + y", f5)).status == NiceStatus::Nice);
    // d = 3 in three variables: three parts in two variables are always dependent.
    const auto v = is_nice(P("x^3 + y^3 + z^3 + x*y*z", f5));
    CHECK(v.status == NiceStatus::NotNice);
    for (const auto& c : v.checks) CHECK(c.check.relation->verify());
    // In characteristic 5, x^5 and y^5 are independent but their Jacobian
    // vanishes; the bounded search cannot settle it.
    const MvPoly frob[] = {P("x^5", f5, 2), P("y^5", f5, 2)};
    NicenessOptions opts;
    opts.bound = 3;
    const auto w = check_independence(frob, opts);
    CHECK(w.outcome == Independence::Unknown);
    CHECK(w.bound_used == 3);
}

TEST_CASE("independent families never produce relations") {
    for (auto spec : {"5", "7"}) {
        auto f = parse_field_spec(spec);
        Rng rng(4242);
        int tested = 0;
        while (tested < 200) {
            const std::size_t n = 2 + rng.uniform(2);
            std::vector<MvPoly> ps;
            for (std::size_t i = 0; i < n; ++i) ps.push_back(random_poly_total(f, n, 2, rng));
            if (jacobian_det(ps).is_zero()) continue;
            ++tested;
            const int bound = default_annihilator_bound(ps, 5000);
            CHECK_FALSE(find_annihilator(ps, bound));
        }
    }
}

TEST_CASE("genuinely ternary") {
    auto f5 = FieldCtx::create(5);
    CHECK_FALSE(genuinely_ternary(P("x^2 + x*y", f5)));
    CHECK(genuinely_ternary(P("x*y*z", f5)));
    CHECK_FALSE(genuinely_ternary(MvPoly(f5, 3)));
    CHECK(variable_occurrence(P("x + z", f5)) == std::array<bool, 3>{true, false, true});
    CHECK_THROWS_AS(genuinely_ternary(P("x", f5, 2)), InvalidArgument);
}

TEST_CASE("classify_quadratic examples") {
    auto f5 = FieldCtx::create(5);
    {
        const auto c = classify_quadratic(P("x^2 + y^2 + z^2", f5));
        CHECK_FALSE(c.nice);
        CHECK(c.reason == QuadraticReason::NoCrossTerms);
    }
    {
        // (x+y+z)^2 * 2^{-1} expanded independently over F_5.
        const MvPoly sq = P("(x+y+z)^2", f5).scale(f5->from_integer(2).inv());
        const MvPoly q = P("3*x^2 + 3*y^2 + 3*z^2 + x*y + x*z + y*z", f5);
        CHECK(sq == q);
        const auto c = classify_quadratic(q);
        CHECK_FALSE(c.nice);
        CHECK(c.reason == QuadraticReason::CompletedSquare);
        REQUIRE(c.square);
        CHECK(c.square->e == f5->from_integer(3));
    }
    {
        const auto c = classify_quadratic(P("2*z^2 + (x+y)*z + x*y", f5));
        CHECK(c.nice);
        CHECK(c.reason == QuadraticReason::Generic);
    }
    {
        const auto c = classify_quadratic(P("x^2 + x*y + y", f5));
        CHECK_FALSE(c.nice);
        CHECK(c.reason == QuadraticReason::AbsentVariable);
        CHECK(c.absent_variable == 2);
    }
    {
        // Shifted square plus constant: e (x + 2y + 3z + 1)^2 + 4.
        const MvPoly q = P("2*(x + 2*y + 3*z + 1)^2 + 4", f5);
        const auto c = classify_quadratic(q);
        CHECK(c.reason == QuadraticReason::CompletedSquare);
    }
    CHECK_THROWS_AS(classify_quadratic(P("x*y*z", f5)), InvalidArgument);
    CHECK_THROWS_AS(classify_quadratic(P("x*y", f5, 2)), InvalidArgument);
    CHECK_THROWS_AS(classify_quadratic(P("x*y + z^2", FieldCtx::create(2, 2))), DomainError);
    CHECK_THROWS_AS(classify_quadratic(P("x*y + z^2", FieldCtx::create(2))), DomainError);
}

TEST_CASE("fit_square_relation") {
    auto f7 = FieldCtx::create(7);
    const MvPoly l = P("2*x + 3*y", f7, 2);
    const auto fit = fit_square_relation(l, (l * l).scale(f7->from_integer(4)) + l.scale(f7->from_integer(5)));
    REQUIRE(fit);
    CHECK(fit->first == f7->from_integer(4));
    CHECK(fit->second == f7->from_integer(5));
    CHECK_FALSE(fit_square_relation(l, P("x*y", f7, 2)));
}

TEST_CASE("classifier agrees with is_nice on random quadratics") {
    for (auto spec : {"5", "7", "3^2"}) {
        const auto s = random_quadratic_scan(parse_field_spec(spec), 1000, 77);
        CHECK(s.scanned == 1000);
        CHECK(s.disagreements == 0);
        CHECK(s.verdict_inconclusive == 0);
        CHECK(s.square_fit_failed == 0);
        CHECK(s.agreement());
    }
}
