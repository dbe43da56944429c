#pragma once

// Values frozen from tests/oracles/brute_force.py (direct enumeration with
// numpy, independent of the library). Regenerate there before editing.

#include <cstdint>

namespace ffx::fixtures {

// 2z^2 + (x+y)z + xy with X = Y = Z = F_11.
inline constexpr std::uint64_t kNiceQuadraticF11FullImage = 11;
// Largest full-set deficiency of that quadratic over odd primes 11..199.
inline constexpr std::uint64_t kNiceQuadraticDeficiencyMax = 0;
// Same quadratic over F_13 with X = Y = Z = {1,2,3,5,8}, and with {1,2}.
inline constexpr std::uint64_t kNiceQuadraticF13SmallImage = 13;
inline constexpr std::uint64_t kNiceQuadraticF13PairImage = 5;

// x^3 + yx + z^2, full sets: deficiency over F_11 and the max over primes 11..101.
inline constexpr std::uint64_t kConcCubicF11FullDeficiency = 0;
inline constexpr std::uint64_t kConcCubicDeficiencyMax = 0;
// x^3 + yx + z^2 over F_11 with X = {0,1}, Y = {0}, Z = {1,2,3}.
inline constexpr std::uint64_t kConcCubicF11TinyImage = 6;

// x + 2y over F_13, X = {0..6}, Y = {0,2,...,12}.
inline constexpr std::uint64_t kLinearF13Image = 13;

struct CounterexampleFixture {
    std::uint32_t p;
    std::uint32_t a, b, c;
    std::uint64_t x, y, z, image, ceiling;
};

inline constexpr CounterexampleFixture kCounterexamples[] = {
    {101, 1, 1, 1, 32, 32, 32, 71, 75},    {101, 1, 2, 3, 32, 18, 18, 57, 75},
    {229, 1, 1, 1, 62, 62, 62, 168, 171},  {229, 1, 2, 3, 62, 52, 62, 164, 171},
    {1009, 1, 1, 1, 262, 262, 262, 754, 756}, {1009, 1, 2, 3, 262, 262, 262, 754, 756},
};

}  // namespace ffx::fixtures
