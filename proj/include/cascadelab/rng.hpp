#pragma once

#include <cstdint>
#include <random>

namespace cascadelab {

/// splitmix64 finalizer; used to derive well-separated engine seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives the seed of an independent stream from (base seed, domain tag, index).
/// Streams with distinct tags never collide for the same base seed, which keeps
/// training and evaluation draws in disjoint seed domains.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
    return mix64(mix64(mix64(seed) ^ tag) + index);
}

// Stream domain tags.
inline constexpr std::uint64_t kStreamTrain   = 0x747261696e000001ULL;
inline constexpr std::uint64_t kStreamEval    = 0x6576616c00000002ULL;
inline constexpr std::uint64_t kStreamGlauber = 0x676c617562657203ULL;
inline constexpr std::uint64_t kStreamNull    = 0x6e756c6c00000004ULL;
inline constexpr std::uint64_t kStreamCluster = 0x636c757374657205ULL;
inline constexpr std::uint64_t kStreamPick    = 0x7069636b00000006ULL;

/// mt19937_64 wrapper with fully specified draw helpers, so byte-identical
/// output does not depend on the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, n). Rejection sampling on the top bits.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace cascadelab
