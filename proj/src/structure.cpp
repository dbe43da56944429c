#include "ffexpand/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "ffexpand/linalg.hpp"

namespace ffx {
namespace {

MvPoly det_cofactor(const std::vector<std::vector<MvPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    MvPoly acc(m[0][0].field_ptr(), m[0][0].nvars());
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<MvPoly>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<MvPoly> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c) {
                if (c != col) row.push_back(m[r][c]);
            }
            minor.push_back(std::move(row));
        }
        const MvPoly term = m[0][col] * det_cofactor(minor);
        acc = (col % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

void require_common_ring(std::span<const MvPoly> polys) {
    if (polys.empty()) throw InvalidArgument("empty polynomial list");
    for (const auto& p : polys) {
        if (!p.field().same_field(polys[0].field())) throw ContextMismatch();
        if (p.nvars() != polys[0].nvars()) throw InvalidArgument("polynomials have different numbers of variables");
    }
}

// Exponent vectors of length m and total degree exactly `deg`, descending lex.
void monomials_of_degree(std::size_t m, std::uint32_t deg, std::vector<Exponents>& out) {
    Exponents e(m, 0);
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
        if (i + 1 == m) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (std::uint32_t v = left + 1; v-- > 0;) {
            e[i] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, deg);
}

// Next combination of k indices out of n, in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

MvPoly jacobian_det(std::span<const MvPoly> polys) {
    require_common_ring(polys);
    const std::size_t d = polys.size();
    if (polys[0].nvars() != d) {
        throw InvalidArgument("Jacobian determinant needs as many polynomials as variables (" + std::to_string(d) +
                              " vs " + std::to_string(polys[0].nvars()) + ")");
    }
    std::vector<std::vector<MvPoly>> m(d);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < d; ++j) m[k].push_back(polys[k].partial(j));
    }
    return det_cofactor(m);
}

bool AnnihilatorRelation::verify() const {
    if (relation.is_zero() || relation.nvars() != polys.size()) return false;
    return relation.compose(polys).is_zero();
}

std::uint64_t monomial_count(int nvars, int degree) {
    // C(degree + nvars, nvars), saturating.
    long double c = 1;
    for (int i = 1; i <= nvars; ++i) c = c * static_cast<long double>(degree + i) / i;
    if (c > 1e18L) return UINT64_MAX;
    return static_cast<std::uint64_t>(std::llround(c));
}

std::optional<AnnihilatorRelation> find_annihilator(std::span<const MvPoly> polys, int bound,
                                                    const AnnihilatorLimits& limits) {
    require_common_ring(polys);
    if (bound < 1) throw InvalidArgument("annihilator degree bound must be at least 1");
    const std::size_t m = polys.size();
    const FieldPtr& field = polys[0].field_ptr();
    const std::uint64_t ncols = monomial_count(static_cast<int>(m), bound);
    if (ncols > limits.max_columns) {
        throw CapExceeded("annihilator system with degree bound " + std::to_string(bound) + " has " +
                          std::to_string(ncols) + " unknowns (cap " + std::to_string(limits.max_columns) + ")");
    }

    // Monomials of the products are packed into integers with a mixed radix
    // large enough that adding keys never carries between variables.
    const std::size_t n = polys[0].nvars();
    std::vector<std::uint64_t> stride(n);
    std::uint64_t span_size = 1;
    for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t top = 0;
        for (const auto& p : polys) top = std::max<std::uint64_t>(top, static_cast<std::uint64_t>(std::max(0, p.degree_in(j))));
        const std::uint64_t radix = top * static_cast<std::uint64_t>(bound) + 1;
        stride[j] = span_size;
        if (span_size > (std::uint64_t{1} << 62) / radix) throw CapExceeded("annihilator system exponent range too large");
        span_size *= radix;
    }
    auto pack_key = [&](const Exponents& e) {
        std::uint64_t k = 0;
        for (std::size_t j = 0; j < n; ++j) k += e[j] * stride[j];
        return k;
    };
    std::vector<std::vector<std::pair<std::uint64_t, Raw>>> packed(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [e, c] : polys[i].terms()) packed[i].emplace_back(pack_key(e), c);
    }

    constexpr std::uint64_t kDenseLookup = std::uint64_t{1} << 22;
    std::vector<std::uint32_t> dense_rows;  // key -> row + 1
    std::unordered_map<std::uint64_t, std::uint32_t> sparse_rows;
    if (span_size <= kDenseLookup) dense_rows.assign(span_size, 0);
    std::vector<std::uint64_t> row_keys;
    auto row_of = [&](std::uint64_t key) -> std::uint32_t {
        std::uint32_t* slot;
        if (!dense_rows.empty()) {
            slot = &dense_rows[key];
        } else {
            slot = &sparse_rows[key];
        }
        if (*slot == 0) {
            row_keys.push_back(key);
            *slot = static_cast<std::uint32_t>(row_keys.size());
            if (row_keys.size() > limits.max_rows) {
                throw CapExceeded("annihilator system exceeds " + std::to_string(limits.max_rows) + " equations");
            }
        }
        return *slot - 1;
    };

    using Column = std::vector<std::pair<std::uint32_t, Raw>>;
    std::vector<Exponents> columns;
    std::vector<Column> products;
    std::map<Exponents, std::size_t> column_index;
    std::vector<Raw> acc;
    std::vector<std::uint32_t> touched;

    auto add_column = [&](const Exponents& alpha) {
        std::size_t i = 0;
        while (i < m && alpha[i] == 0) ++i;
        Column col;
        if (i == m) {
            col.emplace_back(row_of(0), 1);
        } else {
            Exponents beta = alpha;
            --beta[i];
            const Column& base = products[column_index.at(beta)];
            touched.clear();
            for (const auto& [r, v] : base) {
                const std::uint64_t key = row_keys[r];
                for (const auto& [t, c] : packed[i]) {
                    const std::uint32_t row = row_of(key + t);
                    if (row >= acc.size()) acc.resize(row_keys.size(), 0);
                    if (acc[row] == 0) touched.push_back(row);
                    acc[row] = field->add(acc[row], field->mul(v, c));
                    // A cancellation to zero may re-add the row; dedupe below.
                }
            }
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (std::uint32_t row : touched) {
                if (acc[row] != 0) col.emplace_back(row, acc[row]);
                acc[row] = 0;
            }
        }
        column_index.emplace(alpha, columns.size());
        columns.push_back(alpha);
        products.push_back(std::move(col));
    };

    std::vector<Exponents> fresh;
    monomials_of_degree(m, 0, fresh);
    add_column(fresh[0]);

    // Escalate the degree geometrically. When a stage finds no relation, none
    // exists below its degree, so the smallest free column of the next stage
    // still yields the globally minimal leading monomial.
    int built = 0;
    for (int stage = 1; built < bound; stage = std::min(bound, stage * 2)) {
        for (int deg = built + 1; deg <= stage; ++deg) {
            fresh.clear();
            monomials_of_degree(m, static_cast<std::uint32_t>(deg), fresh);
            for (const auto& alpha : fresh) add_column(alpha);
        }
        built = stage;

        MatrixGF sys(field, row_keys.size(), columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            for (const auto& [r, v] : products[c]) sys.at(r, c) = v;
        }
        const auto basis = kernel(sys);
        if (basis.empty()) continue;

        const auto& v = basis.front();
        MvPoly rel(field, m);
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (v[c] != 0) rel.add_term(columns[c], v[c]);
        }
        AnnihilatorRelation out{std::vector<MvPoly>(polys.begin(), polys.end()), std::move(rel)};
        if (!out.verify()) throw Error("annihilator failed symbolic verification");  // kernel arithmetic bug
        return out;
    }
    return std::nullopt;
}

std::optional<int> perron_bound(int m, int n, int D) {
    if (m < 1 || n < 1 || D < 1) throw InvalidArgument("perron_bound arguments must be positive");
    if (m <= n) return std::nullopt;
    auto binom = [](long long top, int k) {
        long double c = 1;
        for (int i = 1; i <= k; ++i) c = c * static_cast<long double>(top - k + i) / i;
        return c;
    };
    // The floating estimate only guards the exact 128-bit comparison against overflow.
    auto exact_binom = [](unsigned long long top, int k) {
        unsigned __int128 c = 1;
        for (int i = 1; i <= k; ++i) c = c * (top - static_cast<unsigned>(k) + static_cast<unsigned>(i)) / static_cast<unsigned>(i);
        return c;
    };
    for (long long M = 1; M < 100000000; ++M) {
        const long double lhs = binom(M + m, m), rhs = binom(static_cast<long long>(D) * M + n, n);
        if (lhs > 1e36L || rhs > 1e36L) throw CapExceeded("perron_bound search left the exact integer range");
        if (exact_binom(static_cast<unsigned long long>(M + m), m) >
            exact_binom(static_cast<unsigned long long>(D * M + n), n)) {
            return static_cast<int>(M);
        }
    }
    throw CapExceeded("perron_bound search did not terminate");
}

int default_annihilator_bound(std::span<const MvPoly> polys, std::size_t max_columns) {
    long long prod = 1;
    for (const auto& p : polys) {
        prod *= std::max(1, p.total_degree());
        if (prod > 1000000) break;
    }
    int bound = static_cast<int>(std::min<long long>(prod, 1000000));
    const int m = static_cast<int>(polys.size());
    while (bound > 1 && monomial_count(m, bound) > max_columns) --bound;
    return bound;
}

IndependenceCheck check_independence(std::span<const MvPoly> polys, const NicenessOptions& opts) {
    require_common_ring(polys);
    IndependenceCheck out;
    const std::size_t m = polys.size();
    const std::size_t n = polys[0].nvars();
    const FieldPtr& field = polys[0].field_ptr();

    for (std::size_t k = 0; k < m; ++k) {
        if (polys[k].is_zero()) {
            out.outcome = Independence::Dependent;
            out.relation = AnnihilatorRelation{std::vector<MvPoly>(polys.begin(), polys.end()),
                                               MvPoly::variable(field, m, k)};
            return out;
        }
    }

    if (m <= n) {
        // Partials matrix m x n; look for a nonzero maximal minor.
        std::vector<std::vector<MvPoly>> partials(m);
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t j = 0; j < n; ++j) partials[k].push_back(polys[k].partial(j));
        }
        std::vector<std::size_t> cols(m);
        for (std::size_t i = 0; i < m; ++i) cols[i] = i;
        do {
            std::vector<std::vector<MvPoly>> sub(m);
            for (std::size_t k = 0; k < m; ++k) {
                for (auto c : cols) sub[k].push_back(partials[k][c]);
            }
            MvPoly det = det_cofactor(sub);
            if (!det.is_zero()) {
                out.outcome = Independence::Independent;
                out.jacobian = JacobianWitness{std::move(det), cols};
                return out;
            }
        } while (next_combination(cols, n));
    }

    out.bound_used = opts.bound ? *opts.bound : default_annihilator_bound(polys, opts.limits.max_columns);
    auto rel = find_annihilator(polys, out.bound_used, opts.limits);
    if (rel) {
        out.outcome = Independence::Dependent;
        out.relation = std::move(rel);
    }
    return out;
}

const char* to_string(NiceStatus s) {
    switch (s) {
        case NiceStatus::Nice: return "Nice";
        case NiceStatus::NotNice: return "NotNice";
        case NiceStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(Independence s) {
    switch (s) {
        case Independence::Independent: return "independent";
        case Independence::Dependent: return "dependent";
        case Independence::Unknown: return "unknown";
    }
    return "?";
}

const JacobianWitness* NicenessVerdict::witness() const {
    if (status != NiceStatus::Nice || checks.empty()) return nullptr;
    const auto& j = checks.back().check.jacobian;
    return j ? &*j : nullptr;
}

NicenessVerdict is_nice(const MvPoly& p, const NicenessOptions& opts) {
    if (p.nvars() < 2) throw InvalidArgument("niceness needs at least two variables");
    if (p.total_degree() < 1) throw InvalidArgument("niceness is undefined for constant polynomials");
    NicenessVerdict v;
    v.degree = p.total_degree();
    bool all_dependent = true;
    for (std::size_t var = p.nvars(); var-- > 0;) {
        DistinguishedCheck dc;
        dc.variable = var;
        dc.decomposition = decompose(p, var);
        dc.check = check_independence(dc.decomposition.parts, opts);
        v.bound_used = std::max(v.bound_used, dc.check.bound_used);
        const Independence outcome = dc.check.outcome;
        v.checks.push_back(std::move(dc));
        if (outcome == Independence::Independent) {
            v.status = NiceStatus::Nice;
            v.distinguished = var;
            return v;
        }
        if (outcome != Independence::Dependent) all_dependent = false;
    }
    v.status = all_dependent ? NiceStatus::NotNice : NiceStatus::Inconclusive;
    return v;
}

}  // namespace ffx
