#pragma once

#include <cstdint>
#include <random>

namespace spectral {

// All randomized code draws through these helpers instead of
// std::*_distribution, whose output differs between standard libraries.
// mt19937_64 itself is specified bit-exactly, so results are reproducible
// across platforms.

inline double next_unit(std::mt19937_64& rng) {
    // 53 random bits mapped to [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t next_index(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t i = static_cast<std::uint64_t>(next_unit(rng) * static_cast<double>(n));
    return i < n ? i : n - 1;
}

} // namespace spectral
