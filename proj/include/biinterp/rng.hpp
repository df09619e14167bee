#pragma once

#include <cstdint>
#include <string_view>

namespace biinterp {

/// SplitMix64: tiny deterministic generator, identical output on every
/// platform (std distributions are implementation-defined, so reports
/// produced with them would not be portable golden files).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased.
        std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    /// Bernoulli draw with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Derive an independent stream from a base seed and a label.
inline std::uint64_t mix_seed(std::uint64_t base, std::string_view label, std::uint64_t salt = 0) {
    SplitMix64 m(base ^ (fnv1a64(label) + 0x9e3779b97f4a7c15ULL * (salt + 1)));
    m.next();
    return m.next();
}

}  // namespace biinterp
