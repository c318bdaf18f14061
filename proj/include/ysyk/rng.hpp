// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rng.hpp
 * @brief Reproducible random streams.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Uniform and normal variates are produced here rather than by
 * the <random> distributions, whose algorithms are implementation-defined.
 */

#pragma once

#include <cstdint>
#include <random>

namespace ysyk {

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed of realization `index` within a run seeded by `base`.
[[nodiscard]] constexpr std::uint64_t hash64(std::uint64_t base, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(base) ^ (index + 0x632BE59BD9B4E019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() noexcept {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal variate, Box-Muller with the second value cached.
    double normal() noexcept;

    std::uint64_t bits() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace ysyk
