#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

namespace ffx {

/// Seeded generator with stable cross-platform output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded draws use rejection sampling on the raw 64-bit output
/// instead of std::uniform_int_distribution, whose algorithm is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n). n must be positive.
    std::uint64_t uniform(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// k distinct values from [0, n), sorted ascending (Floyd's algorithm).
    std::vector<std::uint64_t> sample_distinct(std::uint64_t n, std::uint64_t k) {
        std::vector<std::uint64_t> out;
        if (k >= n) {
            out.resize(n);
            for (std::uint64_t i = 0; i < n; ++i) out[i] = i;
            return out;
        }
        std::unordered_set<std::uint64_t> chosen;
        chosen.reserve(k * 2);
        for (std::uint64_t j = n - k; j < n; ++j) {
            const std::uint64_t t = uniform(j + 1);
            if (!chosen.insert(t).second) chosen.insert(j);
        }
        out.assign(chosen.begin(), chosen.end());
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ffx
