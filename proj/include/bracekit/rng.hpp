#pragma once

#include <cstdint>
#include <random>

namespace bracekit {

inline constexpr std::uint64_t kDefaultSeed = 0xB7ACE517ULL;

// Deterministic sampler. mt19937_64 output is specified bit-for-bit by the
// standard; the bound reduction below is our own (std::uniform_int_distribution
// is not portable across library implementations).
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, n), n >= 1, by rejection from the top multiple of n
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    std::int64_t below_i64(std::int64_t n) {
        return static_cast<std::int64_t>(below(static_cast<std::uint64_t>(n)));
    }

private:
    std::mt19937_64 eng_;
};

} // namespace bracekit
