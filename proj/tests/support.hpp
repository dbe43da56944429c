#pragma once

// Shared generators for the test suites.

#include "ffexpand/mvpoly.hpp"
#include "ffexpand/rng.hpp"

namespace ffx::testing {

inline FieldElement random_element(const FieldCtx& f, Rng& rng) {
    return f.element(static_cast<Raw>(rng.uniform(f.order())));
}

inline FieldElement random_nonzero(const FieldCtx& f, Rng& rng) {
    return f.element(static_cast<Raw>(1 + rng.uniform(f.order() - 1)));
}

/// Up to `nterms` random terms with per-variable exponents in [0, max_exp].
inline MvPoly random_poly(const FieldPtr& f, std::size_t nvars, int nterms, std::uint32_t max_exp, Rng& rng) {
    MvPoly p(f, nvars);
    for (int i = 0; i < nterms; ++i) {
        Exponents e(nvars);
        for (auto& x : e) x = static_cast<std::uint32_t>(rng.uniform(max_exp + 1));
        p.add_term(e, random_nonzero(*f, rng).raw());
    }
    return p;
}

/// Random polynomial of total degree at most `deg` (dense over the monomials of that degree).
inline MvPoly random_poly_total(const FieldPtr& f, std::size_t nvars, std::uint32_t deg, Rng& rng) {
    MvPoly p(f, nvars);
    Exponents e(nvars, 0);
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
        if (i == nvars) {
            p.add_term(e, random_element(*f, rng).raw());
            return;
        }
        for (std::uint32_t v = 0; v <= left; ++v) {
            e[i] = v;
            self(self, i + 1, left - v);
        }
        e[i] = 0;
    };
    rec(rec, 0, deg);
    return p;
}

inline std::vector<FieldElement> random_point(const FieldCtx& f, std::size_t n, Rng& rng) {
    std::vector<FieldElement> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(random_element(f, rng));
    return pt;
}

}  // namespace ffx::testing
