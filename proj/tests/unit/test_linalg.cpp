#include "doctest.h"

#include "ffexpand/linalg.hpp"
#include "ffexpand/rng.hpp"

using namespace ffx;

namespace {

MatrixGF random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, Rng& rng) {
    std::vector<Raw> e(r * c);
    for (auto& v : e) v = static_cast<Raw>(rng.uniform(f->order()));
    return MatrixGF(f, r, c, std::move(e));
}

}  // namespace

TEST_CASE("rref examples") {
    auto f5 = FieldCtx::create(5);
    {
        const auto r = rref(MatrixGF(f5, 2, 2, {1, 2, 2, 4}));
        CHECK(r.rank() == 1);
        CHECK(r.pivots == std::vector<std::size_t>{0});
    }
    auto f7 = FieldCtx::create(7);
    CHECK(rank(MatrixGF::identity(f7, 3)) == 3);
    CHECK(rank(MatrixGF(f7, 2, 3)) == 0);
    CHECK(rank(MatrixGF(f7, 0, 3)) == 0);
    CHECK_THROWS_AS(MatrixGF(f7, 2, 2, {1, 2, 3}), InvalidArgument);
    CHECK_THROWS_AS(MatrixGF(f7, 1, 1, {7}), InvalidArgument);
}

TEST_CASE("kernel examples") {
    auto f5 = FieldCtx::create(5);
    const auto k = kernel(MatrixGF(f5, 2, 2, {1, 2, 2, 4}));
    REQUIRE(k.size() == 1);
    // Proportional to (3, 1): cross product vanishes.
    CHECK(f5->sub(f5->mul(k[0][0], 1), f5->mul(k[0][1], 3)) == 0);
    CHECK(kernel(MatrixGF(f5, 2, 2, {1, 2, 3, 4})).empty());
    CHECK(kernel(MatrixGF(f5, 0, 2)).size() == 2);
}

TEST_CASE("kernel of a random 20x35 matrix over F_7") {
    auto f7 = FieldCtx::create(7);
    Rng rng(7);
    const MatrixGF m = random_matrix(f7, 20, 35, rng);
    const auto basis = kernel(m);
    CHECK(basis.size() == 35 - rank(m));
    for (const auto& v : basis) {
        for (Raw x : m.apply(v)) CHECK(x == 0);
    }
    // Basis vectors are linearly independent: stacked rank equals their count.
    std::vector<Raw> stacked;
    for (const auto& v : basis) stacked.insert(stacked.end(), v.begin(), v.end());
    CHECK(rank(MatrixGF(f7, basis.size(), 35, stacked)) == basis.size());
}

TEST_CASE("rank-nullity and idempotence") {
    for (auto spec : {"3", "5", "3^2"}) {
        auto f = parse_field_spec(spec);
        Rng rng(123);
        int failures = 0;
        for (int i = 0; i < 1000; ++i) {
            const std::size_t r = rng.uniform(7), c = 1 + rng.uniform(7);
            // Low-rank products keep the kernel interesting.
            MatrixGF m = random_matrix(f, r, c, rng);
            if (rng.uniform(2) == 0 && r > 1) {
                for (std::size_t j = 0; j < c; ++j) m.at(r - 1, j) = m.at(0, j);
            }
            const auto red = rref(m);
            if (red.rank() + kernel(m).size() != c) ++failures;
            if (!(rref(red.reduced).reduced == red.reduced)) ++failures;
        }
        CHECK(failures == 0);
    }
}
