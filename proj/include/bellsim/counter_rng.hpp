#pragma once

#include <cstdint>

namespace bellsim {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-derived stream: every (key, counter) pair yields an independent
/// SplitMix64 sequence, so results never depend on how work is chunked.
class CounterRng {
public:
    constexpr CounterRng(std::uint64_t key, std::uint64_t counter) noexcept
        : state_(mix64(key + kGolden * (mix64(counter) | 1U))) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t state_;
};

}  // namespace bellsim
