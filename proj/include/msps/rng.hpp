// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_RNG_HPP
#define MSPS_RNG_HPP

#include <cstdint>

namespace msps {

// SplitMix64 (Steele, Lea & Flood 2014). The stream is the finalizer applied
// to seed + k * 0x9E3779B97F4A7C15 for k = 1, 2, ..., so the whole generator
// is a pure function of (seed, counter) and reproducible on any platform.
// Do not change: generated datasets depend on every bit of this.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Unbiased integer in [lo, hi] by rejection on the top of the range.
    constexpr std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) noexcept {
        const std::uint64_t span = hi - lo;
        if (span == ~std::uint64_t{0}) return next();
        const std::uint64_t range = span + 1;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return lo + v % range;
    }

    // Independent child stream; the parent advances by one draw.
    constexpr SplitMix64 split() noexcept { return SplitMix64(mix(next() ^ 0x5851F42D4C957F2DULL)); }

private:
    std::uint64_t state_;
};

}  // namespace msps

#endif  // MSPS_RNG_HPP
