#pragma once

#include <cstdint>

namespace smoothsched {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives an independent key from a parent key and a stream index.
constexpr std::uint64_t derive_key(std::uint64_t key, std::uint64_t index) {
    return mix64(mix64(key) ^ mix64(index + 0xD1B54A32D192ED03ULL));
}

/// Counter-based random stream: the k-th draw is a pure function of (key, k),
/// so streams keyed by job or trial index are independent of draw order
/// elsewhere.
class Stream {
  public:
    explicit constexpr Stream(std::uint64_t key) : key_(key) {}
    constexpr Stream(std::uint64_t seed, std::uint64_t index) : key_(derive_key(seed, index)) {}

    constexpr std::uint64_t next_u64() { return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

    /// Uniform double in the open interval (0, 1).
    constexpr double next_open01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - (~std::uint64_t{0} % bound));
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit && limit != 0);
        return x % bound;
    }

    constexpr std::uint64_t key() const { return key_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace smoothsched
