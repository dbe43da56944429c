#include "doctest.h"

#include "ffexpand/incidence.hpp"
#include "ffexpand/errors.hpp"

using namespace ffx;

namespace {

// Recount through FieldElement arithmetic and explicit powers, sharing no
// code with the library's counters.
std::uint64_t recount(const PointSet& pts, const CurveFamily& curves) {
    const FieldCtx& f = pts.field();
    std::uint64_t count = 0;
    for (const auto& p : pts.points()) {
        const FieldElement x = f.element(p.x);
        for (const auto& c : curves.coeffs()) {
            FieldElement v = f.zero();
            for (std::size_t i = 0; i < c.size(); ++i) v = v + f.element(c[i]) * x.pow(c.size() - 1 - i);
            if (v.raw() == p.y) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("incidence examples") {
    auto f5 = FieldCtx::create(5);
    CHECK(count_incidences(all_points(f5), all_curves(f5, 2)) == 625);

    const PointSet origin(f5, {{0, 0}});
    const CurveFamily diagonal(f5, 1, {{1, 0}});
    CHECK(count_incidences(origin, diagonal) == 1);

    auto f7 = FieldCtx::create(7);
    Rng rng(10);
    for (int i = 0; i < 50; ++i) {
        const PointSet p = random_points(f7, 10, rng);
        const CurveFamily c = random_curves(f7, 2, 10, rng);
        CHECK(p.size() == 10);
        CHECK(c.size() == 10);
        CHECK(count_incidences(p, c) == recount(p, c));
    }
}

TEST_CASE("counting methods and thread counts agree with the recount") {
    for (auto spec : {"5", "7", "3^2", "2^3", "13"}) {
        auto f = parse_field_spec(spec);
        const std::uint64_t q = f->order();
        Rng rng(31);
        for (int n = 1; n <= 3 && static_cast<std::uint64_t>(n) < q; ++n) {
            for (int trial = 0; trial < 20; ++trial) {
                const PointSet p = random_points(f, 1 + rng.uniform(q * q), rng);
                const CurveFamily c = random_curves(f, n, 1 + rng.uniform(2 * q * q), rng);
                const std::uint64_t expected = recount(p, c);
                for (auto method : {CountMethod::Naive, CountMethod::Bucketed, CountMethod::Auto}) {
                    for (unsigned threads : {1u, 3u}) {
                        CHECK(count_incidences(p, c, CountOptions{method, threads}) == expected);
                    }
                }
            }
        }
    }
}

TEST_CASE("every curve has exactly q points") {
    for (auto spec : {"2", "3", "5", "7", "2^2", "2^3", "3^2"}) {
        auto f = parse_field_spec(spec);
        for (int n = 1; n <= 2 && static_cast<std::uint32_t>(n) < f->order(); ++n) {
            const CurveFamily all = all_curves(f, n);
            const PointSet plane = all_points(f);
            // Each curve alone meets the plane in q points.
            for (const auto& c : all.coeffs()) {
                CHECK(count_incidences(plane, CurveFamily(f, n, {c})) == f->order());
                CHECK(points_on_curve(f, c).size() == f->order());
            }
        }
    }
}

TEST_CASE("construction errors") {
    auto f5 = FieldCtx::create(5);
    CHECK_THROWS_AS(CurveFamily(f5, 5, {}), DomainError);
    CHECK_THROWS_AS(CurveFamily(FieldCtx::create(7), 7, {}), DomainError);
    CHECK_THROWS_AS(CurveFamily(f5, 2, {{1, 2}}), InvalidArgument);
    CHECK_THROWS_AS(CurveFamily(f5, 1, {{5, 0}}), InvalidArgument);
    CHECK_THROWS_AS(PointSet(f5, {{0, 5}}), InvalidArgument);
    CHECK(PointSet(f5, {{1, 1}, {1, 1}, {0, 2}}).size() == 2);
    CHECK(CurveFamily(f5, 1, {{1, 1}, {1, 1}}).size() == 1);
    CHECK_THROWS_AS(count_incidences(PointSet(f5, {}), CurveFamily(FieldCtx::create(7), 1, {})), ContextMismatch);
}

TEST_CASE("vinh deviation on full sets is zero") {
    for (auto spec : {"5", "7", "3^2"}) {
        auto f = parse_field_spec(spec);
        for (int n = 1; n <= 2; ++n) {
            const auto v = vinh_deviation(all_points(f), all_curves(f, n));
            CHECK(v.numerator == 0);
            CHECK(v.deviation() == 0.0);
            CHECK(v.satisfied);
        }
    }
}

TEST_CASE("line case holds on random instances") {
    for (std::uint32_t p : {7u, 11u}) {
        auto f = FieldCtx::create(p);
        Rng rng(p);
        int failures = 0;
        for (int i = 0; i < 1000; ++i) {
            const PointSet pts = random_points(f, 1 + rng.uniform(p * p), rng);
            const CurveFamily lines = random_curves(f, 1, 1 + rng.uniform(p * p), rng);
            const auto v = vinh_deviation(pts, lines);
            if (!v.satisfied) ++failures;
            // The integer verdict matches the floating comparison away from ties.
            if (v.deviation() < 0.999 * v.bound()) CHECK(v.satisfied);
        }
        CHECK(failures == 0);
    }
}

TEST_CASE("quadratic curves over F_9 satisfy the bound") {
    auto f9 = FieldCtx::create(3, 2);
    Rng rng(9);
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const PointSet pts = random_points(f9, 1 + rng.uniform(81), rng);
        const CurveFamily curves = random_curves(f9, 2, 1 + rng.uniform(729), rng);
        if (!vinh_deviation(pts, curves).satisfied) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("adversarial instances satisfy the bound") {
    for (auto spec : {"5", "7", "3^2", "11", "13"}) {
        auto f = parse_field_spec(spec);
        Rng rng(77);
        for (int n = 1; n <= 3; ++n) {
            const CurveFamily some = random_curves(f, n, f->order() * 2, rng);
            const auto& first = some.coeffs().front();
            CHECK(vinh_deviation(points_on_curve(f, first), some).satisfied);
            const Point p{1, 2};
            const CurveFamily through = curves_through_point(f, n, p, f->order() * f->order(), rng);
            for (std::size_t i = 0; i < through.size(); ++i) CHECK(through.eval(i, p.x) == p.y);
            CHECK(vinh_deviation(PointSet(f, {p}), through).satisfied);
            CHECK(vinh_deviation(random_points(f, f->order(), rng), through).satisfied);
        }
    }
}

TEST_CASE("vinh check uses exact integers") {
    // Tiny hand instance over F_5 with lines: P = {(0,0)}, L = {y = x}.
    auto f5 = FieldCtx::create(5);
    const auto v = vinh_deviation(PointSet(f5, {{0, 0}}), CurveFamily(f5, 1, {{1, 0}}));
    CHECK(v.incidences == 1);
    CHECK(v.numerator == 4);  // 5*1 - 1*1
    CHECK(v.satisfied);       // 16 <= 125
    // An empty family gives zero deviation.
    const auto e = vinh_deviation(PointSet(f5, {{0, 0}}), CurveFamily(f5, 1, {}));
    CHECK(e.numerator == 0);
    CHECK(e.satisfied);
    CHECK(e.ratio() == 0.0);
}

TEST_CASE("shear examples") {
    auto f7 = FieldCtx::create(7);
    Rng rng(2);
    const PointSet p = random_points(f7, 20, rng);
    const Raw zero[] = {0, 0};
    CHECK(shear(p, zero) == p);
    const Raw a[] = {3, 5};
    CHECK(unshear(shear(p, a), a) == p);
    CHECK(shear(p, a).size() == p.size());
    CHECK(shear(all_points(f7), a) == all_points(f7));
}

TEST_CASE("shearing preserves incidences class by class") {
    for (auto spec : {"5", "7", "3^2"}) {
        auto f = parse_field_spec(spec);
        Rng rng(55);
        for (int n = 2; n <= 3; ++n) {
            for (int trial = 0; trial < 30; ++trial) {
                const PointSet pts = random_points(f, 1 + rng.uniform(f->order() * f->order()), rng);
                const CurveFamily curves = random_curves(f, n, 1 + rng.uniform(4 * f->order() * f->order()), rng);
                std::uint64_t total = 0;
                for (const auto& high : shear_classes(curves)) {
                    const CurveFamily lines = sheared_lines(curves, high);
                    std::vector<std::vector<Raw>> members;
                    for (const auto& c : curves.coeffs()) {
                        if (std::equal(high.begin(), high.end(), c.begin())) members.push_back(c);
                    }
                    const CurveFamily cls(f, n, members);
                    const std::uint64_t lhs = count_incidences(pts, cls);
                    CHECK(lhs == count_incidences(shear(pts, high), lines));
                    total += lhs;
                }
                CHECK(total == count_incidences(pts, curves));
            }
        }
    }
}
