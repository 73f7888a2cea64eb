#pragma once

#include <cstdint>

namespace gab {

// Seedable, portable PRNG (splitmix64, Steele et al.). Every randomized
// component in the library draws from this generator so that traces replay
// bit-identically across platforms given the same seed.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [lo, hi], inclusive. Modulo bias is irrelevant at
    // the range sizes used here (<= 2^20) and keeps replay rules trivial.
    int uniform_int(int lo, int hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(next() % span);
    }

private:
    uint64_t state_;
};

} // namespace gab
