#pragma once

#include <cstdint>
#include <random>

namespace qdt {

// All randomness in the library flows through mt19937_64 so that seeded runs
// reproduce bit-identically on every platform. The draw helpers below replace
// std::uniform_*_distribution, whose output streams differ between standard
// library implementations.
using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic sub-stream for (seed, tag, index), e.g. one per individual
// per generation. Evaluation order and threading cannot change what any
// stream produces.
inline Rng make_stream(std::uint64_t seed, std::uint64_t tag = 0, std::uint64_t index = 0) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
    s = mix64(s ^ (0xc2b2ae3d27d4eb4fULL * (index + 1)));
    return Rng(s);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double next_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool next_bernoulli(Rng& rng, double p) {
    return next_unit(rng) < p;
}

// Fair coin.
inline bool next_coin(Rng& rng) {
    return (rng() >> 63) != 0;
}

// Uniform integer in [0, n). Rejection sampling keeps the draw unbiased.
inline std::uint64_t next_below(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

} // namespace qdt
