// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/hilbert.hpp"

#include <algorithm>
#include <string>

namespace ysyk {

std::optional<Signed> apply_string(Word w, const std::vector<int>& create, const std::vector<int>& annihilate) noexcept {
    int sign = 1;
    for (auto it = annihilate.rbegin(); it != annihilate.rend(); ++it) {
        auto r = apply_annihilate(w, *it);
        if (!r) return std::nullopt;
        w = r->word;
        sign *= r->sign;
    }
    for (auto it = create.rbegin(); it != create.rend(); ++it) {
        auto r = apply_create(w, *it);
        if (!r) return std::nullopt;
        w = r->word;
        sign *= r->sign;
    }
    return Signed{w, sign};
}

FermionBasis::FermionBasis(int n_modes, int n_particles)
    : n_modes_(n_modes), n_particles_(n_particles) {
    if (n_modes < 1 || n_modes > 62) throw InvalidArgument("fermion modes must be in [1, 62]");
    if (n_particles < 0 || n_particles > n_modes) throw InvalidArgument("particle number out of range");

    choose_.assign(n_modes + 1, std::vector<std::size_t>(n_particles + 2, 0));
    for (int n = 0; n <= n_modes; ++n) {
        choose_[n][0] = 1;
        for (int k = 1; k <= std::min(n, n_particles + 1); ++k)
            choose_[n][k] = choose_[n - 1][k - 1] + (k <= n - 1 ? choose_[n - 1][k] : 0);
    }

    states_.reserve(binomial_u64(n_modes, n_particles));
    if (n_particles == 0) {
        states_.push_back(0);
        return;
    }
    // Gosper's hack enumerates fixed-weight words in ascending order.
    Word w = (Word{1} << n_particles) - 1;
    const Word limit = Word{1} << n_modes;
    while (w < limit) {
        states_.push_back(w);
        const Word c = w & (~w + 1);
        const Word r = w + c;
        w = (((r ^ w) >> 2) / c) | r;
    }
}

std::size_t FermionBasis::index_of(Word w) const noexcept {
    std::size_t rank = 0;
    int t = 0;
    while (w) {
        const int b = std::countr_zero(w);
        ++t;
        rank += choose_[b][t];
        w &= w - 1;
    }
    return rank;
}

BosonBasis::BosonBasis(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
    if (n_modes < 0) throw InvalidArgument("boson mode count must be >= 0");
    if (n_modes > 0 && cutoff < 1) throw InvalidArgument("boson cutoff N_b must be >= 1");
    stride_.resize(n_modes);
    size_ = 1;
    for (int k = 0; k < n_modes; ++k) {
        stride_[k] = size_;
        size_ *= static_cast<std::size_t>(cutoff + 1);
    }
}

std::vector<int> BosonBasis::decode(std::size_t index) const {
    std::vector<int> occ(n_modes_);
    for (int k = 0; k < n_modes_; ++k) occ[k] = occupation(index, k);
    return occ;
}

std::size_t BosonBasis::encode(const std::vector<int>& occ) const {
    if (static_cast<int>(occ.size()) != n_modes_) throw InvalidArgument("boson tuple has wrong length");
    std::size_t idx = 0;
    for (int k = 0; k < n_modes_; ++k) {
        if (occ[k] < 0 || occ[k] > cutoff_) throw InvalidArgument("boson occupation outside cutoff");
        idx += static_cast<std::size_t>(occ[k]) * stride_[k];
    }
    return idx;
}

int BosonBasis::total(std::size_t index) const noexcept {
    int s = 0;
    for (int k = 0; k < n_modes_; ++k) s += occupation(index, k);
    return s;
}

HilbertSpace build_space(int N, int M, int N_b, bool half_filling, int n_particles) {
    if (N < 2) throw InvalidArgument("N must be >= 2");
    if (half_filling) {
        if (N % 2 != 0) throw InvalidArgument("half filling requires even N, got N=" + std::to_string(N));
        n_particles = N / 2;
    } else if (n_particles < 0 || n_particles > N) {
        throw InvalidArgument("n_particles must be in [0, N] when half_filling is off");
    }
    if (M < 0) throw InvalidArgument("M must be >= 0");
    if (M > 0 && N_b < 1) throw InvalidArgument("N_b must be >= 1 when M > 0");

    HilbertSpace s;
    s.n_fermions = N;
    s.n_particles = n_particles;
    s.n_bosons = M;
    s.boson_cutoff = N_b;
    s.fermions = FermionBasis(N, n_particles);
    s.bosons = BosonBasis(M, N_b);
    s.fermion_dim = s.fermions.size();
    s.boson_dim = s.bosons.size();
    s.total_dim = s.fermion_dim * s.boson_dim;
    return s;
}

VecD occupation_sign_diag(const HilbertSpace& space, int i) {
    if (i < 0 || i >= space.n_fermions) throw InvalidArgument("mode index out of range");
    VecD d(static_cast<Index>(space.total_dim));
    for (std::size_t f = 0; f < space.fermion_dim; ++f) {
        const double v = 2.0 * number_op_diag(space.fermions[f], i) - 1.0;
        for (std::size_t b = 0; b < space.boson_dim; ++b) d[static_cast<Index>(space.index(f, b))] = v;
    }
    return d;
}

}  // namespace ysyk
