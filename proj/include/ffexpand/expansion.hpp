#pragma once

// Image sets P(X_1, ..., X_k) and the experiments built on them.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffexpand/mvpoly.hpp"
#include "ffexpand/structure.hpp"

namespace ffx {

/// A subset of F_q as packed raw values, sorted and duplicate-free.
using ElementSet = std::vector<Raw>;

/// Sorts, dedupes and range-checks.
ElementSet make_set(const FieldCtx& field, std::vector<Raw> values);

struct ImageOptions {
    /// Stop once every element of F_q has been hit. Disable to get exact hit counts.
    bool early_exit = true;
    /// 0 means worker_count().
    unsigned threads = 0;
};

struct ImageResult {
    ElementSet image;
    /// Number of product tuples evaluated. Depends on the worker split when early exit fires.
    std::uint64_t evaluations = 0;
    bool exited_early = false;
    /// hits[v] = number of tuples mapping to v. Only filled when early exit is off.
    std::vector<std::uint64_t> hits;
};

/// Exact image of the Cartesian product of `sets` (one per variable).
/// The product is scanned row-major in the given set order, split across
/// workers by the first set; each worker keeps its own bitset of size q.
ImageResult image_set(const MvPoly& p, std::span<const ElementSet> sets, const ImageOptions& opts = {});

enum class SampleMode { Full, Uniform, Interval };
const char* to_string(SampleMode m);
SampleMode parse_sample_mode(std::string_view text);

struct Sampling {
    SampleMode mode = SampleMode::Full;
    std::vector<std::uint64_t> sizes;  // one per set; ignored for Full
    std::uint64_t seed = 0;
};

/// Interval mode takes the representatives 0, 1, ..., s-1 (prime fields only).
/// Uniform mode draws all sets from one generator seeded with `seed`, in order.
std::vector<ElementSet> sample_sets(const FieldPtr& field, std::size_t count, const Sampling& sampling);

/// w * num / den style exact rational, reduced.
struct Rational {
    unsigned __int128 num = 0;
    unsigned __int128 den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

std::string to_decimal(unsigned __int128 v);
unsigned __int128 parse_decimal(std::string_view text);

struct BoundCheck {
    std::string name;
    double value = 0;      // measured quantity
    double threshold = 0;  // limit it is compared against
    bool passed = false;
    bool operator==(const BoundCheck&) const = default;
};

struct ExperimentReport {
    std::string kind;  // "expand", "conc-family", "counterexample"
    std::string field;
    std::string poly_text;
    std::optional<MvPoly> poly;
    int degree = 0;
    Sampling sampling;
    std::vector<std::uint64_t> set_sizes;
    std::uint64_t q = 0;
    std::uint64_t image_size = 0;
    std::uint64_t deficiency = 0;
    /// deficiency * prod |X_i| / q^k with k the number of sets.
    Rational statistic;
    /// C in the size condition |X_i| >= C q^{(k-1)/k}.
    double size_constant = 1.0;
    bool sets_large = false;
    std::vector<BoundCheck> checks;
    std::vector<std::string> warnings;
    /// Independence of the (F, G) pair for conc-family runs.
    std::optional<IndependenceCheck> precondition;
    double wall_time_ms = 0;

    bool all_checks_passed() const;
};

struct DeficiencyOptions {
    double size_constant = 1.0;
    /// Adds a "deficiency" check against this threshold when set.
    std::optional<std::uint64_t> deficiency_threshold;
    ImageOptions image;
};

/// Measures |P(X_1, ..., X_k)| and the normalized deficiency statistic.
ExperimentReport deficiency_stat(const MvPoly& p, std::span<const ElementSet> sets, const Sampling& sampling,
                                 const DeficiencyOptions& opts = {});

struct CounterexampleSets {
    ElementSet x, y, z;
};

/// X = {x : 1 <= r(a x^2) <= floor(p/4)} and likewise Y, Z with b, c.
/// Prime fields of odd order only; a, b, c nonzero.
CounterexampleSets counterexample_sets(const FieldPtr& field, Raw a, Raw b, Raw c);

/// Builds the sets, measures |a x^2 + b y^2 + c z^2| on them and checks the
/// floor(3p/4) ceiling.
ExperimentReport counterexample_run(const FieldPtr& field, Raw a, Raw b, Raw c, const ImageOptions& opts = {});

struct ConcFamily {
    FieldElement a;
    int d = 1;
    MvPoly f;  // in (y, z)
    MvPoly g;  // in (y, z)
};

/// P(x, y, z) = a x^d + F(y, z) x + G(y, z).
MvPoly assemble_conc(const ConcFamily& fam);

/// Checks independence of (F, G), warns unless it is certified, then
/// measures the deficiency of the assembled P on (X, Y, Z).
ExperimentReport conc_family_run(const ConcFamily& fam, std::span<const ElementSet> sets, const Sampling& sampling,
                                 const NicenessOptions& independence = {}, const DeficiencyOptions& opts = {});

}  // namespace ffx
