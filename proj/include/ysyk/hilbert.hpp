// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hilbert.hpp
 * @brief Fixed-particle-number fermion basis tensored with truncated bosons.
 *
 * Fermion modes are bits of a 64-bit word, mode 0 being the least
 * significant bit. Operator strings follow the Jordan-Wigner convention
 * c_j = (prod_{l<j} Z_l) sigma^-_j, so hopping carries the parity of the
 * occupied modes strictly between the two acted positions.
 */

#pragma once

#include "ysyk/common.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ysyk {

using Word = std::uint64_t;

struct Signed {
    Word word;
    int sign;  // +1 or -1
    bool operator==(const Signed&) const = default;
};

[[nodiscard]] constexpr int number_op_diag(Word w, int i) noexcept {
    return static_cast<int>((w >> i) & 1U);
}

// Parity sign of occupied modes strictly below mode i.
[[nodiscard]] constexpr int parity_below(Word w, int i) noexcept {
    const Word mask = (i <= 0) ? 0 : ((Word{1} << i) - 1);
    return (std::popcount(w & mask) & 1) ? -1 : 1;
}

[[nodiscard]] constexpr std::optional<Signed> apply_annihilate(Word w, int i) noexcept {
    if (!number_op_diag(w, i)) return std::nullopt;
    return Signed{w & ~(Word{1} << i), parity_below(w, i)};
}

[[nodiscard]] constexpr std::optional<Signed> apply_create(Word w, int i) noexcept {
    if (number_op_diag(w, i)) return std::nullopt;
    return Signed{w | (Word{1} << i), parity_below(w, i)};
}

// c_i^dagger c_j on an occupation word; nullopt for an empty source or a
// filled target.
[[nodiscard]] constexpr std::optional<Signed> apply_hop(Word w, int i, int j) noexcept {
    if (!number_op_diag(w, j)) return std::nullopt;
    if (i == j) return Signed{w, 1};
    const Word mid = w & ~(Word{1} << j);
    if (number_op_diag(mid, i)) return std::nullopt;
    const int lo = i < j ? i : j;
    const int hi = i < j ? j : i;
    const Word between = ((Word{1} << hi) - 1) & ~((Word{1} << (lo + 1)) - 1);
    const int sign = (std::popcount(mid & between) & 1) ? -1 : 1;
    return Signed{mid | (Word{1} << i), sign};
}

// c^dag_{c1}..c^dag_{cr} c_{a1}..c_{as} on a word, rightmost operator first.
[[nodiscard]] std::optional<Signed> apply_string(Word w, const std::vector<int>& create,
                                                 const std::vector<int>& annihilate) noexcept;

// All words of `n_modes` bits with popcount `n_particles`, ascending.
class FermionBasis {
public:
    FermionBasis() = default;
    FermionBasis(int n_modes, int n_particles);

    [[nodiscard]] int n_modes() const noexcept { return n_modes_; }
    [[nodiscard]] int n_particles() const noexcept { return n_particles_; }
    [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
    [[nodiscard]] Word operator[](std::size_t k) const noexcept { return states_[k]; }
    [[nodiscard]] const std::vector<Word>& states() const noexcept { return states_; }

    // Combinatorial rank; ascending numeric order equals colex order on
    // fixed-weight words, so rank = sum_t C(b_t, t+1) over set bits b_0 < b_1 < ...
    [[nodiscard]] std::size_t index_of(Word w) const noexcept;

private:
    int n_modes_ = 0;
    int n_particles_ = 0;
    std::vector<Word> states_;
    std::vector<std::vector<std::size_t>> choose_;  // choose_[n][k]
};

// Mixed-radix occupation tuples, mode 0 the fastest digit.
class BosonBasis {
public:
    BosonBasis() = default;
    BosonBasis(int n_modes, int cutoff);

    [[nodiscard]] int n_modes() const noexcept { return n_modes_; }
    [[nodiscard]] int cutoff() const noexcept { return cutoff_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }

    [[nodiscard]] int occupation(std::size_t index, int k) const noexcept {
        return static_cast<int>((index / stride_[k]) % static_cast<std::size_t>(cutoff_ + 1));
    }
    [[nodiscard]] std::size_t stride(int k) const noexcept { return stride_[k]; }
    [[nodiscard]] std::vector<int> decode(std::size_t index) const;
    [[nodiscard]] std::size_t encode(const std::vector<int>& occ) const;
    [[nodiscard]] int total(std::size_t index) const noexcept;

private:
    int n_modes_ = 0;
    int cutoff_ = 1;
    std::size_t size_ = 1;
    std::vector<std::size_t> stride_;
};

struct HilbertSpace {
    int n_fermions = 0;   // N
    int n_particles = 0;  // N/2 at half filling
    int n_bosons = 0;     // M
    int boson_cutoff = 1; // N_b
    std::size_t fermion_dim = 0;
    std::size_t boson_dim = 1;
    std::size_t total_dim = 0;
    FermionBasis fermions;
    BosonBasis bosons;

    [[nodiscard]] std::size_t index(std::size_t f, std::size_t b) const noexcept {
        return f * boson_dim + b;
    }
    [[nodiscard]] bool half_filling() const noexcept { return 2 * n_particles == n_fermions; }
};

// half_filling=false takes the sector from n_particles.
[[nodiscard]] HilbertSpace build_space(int N, int M, int N_b, bool half_filling = true,
                                       int n_particles = -1);

// Diagonal of 2 n_i - 1 over the composite basis.
[[nodiscard]] VecD occupation_sign_diag(const HilbertSpace& space, int i);

}  // namespace ysyk
