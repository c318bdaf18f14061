// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file disorder.hpp
 * @brief Random coupling ensembles.
 *
 * Draw order is part of the interface: for a given (seed, shape) the tensors
 * are bit-identical on every platform that implements IEEE doubles and a
 * correctly rounded libm.
 */

#pragma once

#include "ysyk/common.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ysyk {

// Yukawa couplings g_{ij,k}, Hermitian in (i, j) for every boson mode k.
// Off-diagonal entries (x + iy) with x, y ~ N(0, g^2/2); diagonal real N(0, g^2).
struct YsykCouplings {
    int N = 0;
    int M = 0;
    double g = 1.0;
    std::uint64_t seed = 0;
    std::vector<cplx> data;  // [(k*N + i)*N + j]

    [[nodiscard]] cplx operator()(int i, int j, int k) const noexcept {
        return data[(static_cast<std::size_t>(k) * N + i) * N + j];
    }
    // N x N Hermitian slice for mode k.
    [[nodiscard]] MatC slice(int k) const;
};

// Ordered index sets {i_1 < ... < i_r} of {0..N-1}, lexicographic.
[[nodiscard]] std::vector<std::vector<int>> index_sets(int N, int r);

// Complex SYK_q couplings stored as a Hermitian matrix over ordered
// (q/2)-subsets: J(I, J) multiplies c^dag_{I} c_{J}.
struct SykqCouplings {
    int N = 0;
    int q = 2;
    double J = 1.0;
    std::uint64_t seed = 0;
    double variance = 0.0;  // E|J_IJ|^2
    std::vector<std::vector<int>> sets;
    MatC matrix;
};

// complex: g_{ji,s} = conj(g_{ij,s}), as for the Yukawa couplings; the
// pair matrix is then Hermitian and time reversal is broken.
// real: g symmetric, pair matrix real symmetric (orthogonal class).
enum class LowRankField { complex, real };

// Low-rank quartic couplings built from g_{ij,s}.
struct LowRankCouplings {
    int N = 0;
    int M = 0;
    std::uint64_t seed = 0;
    LowRankField field = LowRankField::complex;
    double variance = 0.0;  // E|g|^2 = 2 sqrt(M / N^3)
    std::vector<cplx> g;    // [(s*N + i)*N + j]
    std::vector<std::vector<int>> pairs;
    MatC matrix;  // J_{ij;kl} indexed by pair ranks

    [[nodiscard]] cplx g_at(int i, int j, int s) const noexcept {
        return g[(static_cast<std::size_t>(s) * N + i) * N + j];
    }
};

[[nodiscard]] double sykq_variance(int N, int q, double J);

[[nodiscard]] YsykCouplings sample_ysyk(int N, int M, double g, std::uint64_t seed);
[[nodiscard]] SykqCouplings sample_sykq(int N, int q, double J, std::uint64_t seed);
[[nodiscard]] LowRankCouplings sample_lowrank(int N, int M, std::uint64_t seed,
                                             LowRankField field = LowRankField::complex);

// J_{ij;kl} = (1/M) sum_s (g_ik g_jl - g_il g_jk) / 2 for i<j, k<l.
[[nodiscard]] cplx lowrank_coupling(const LowRankCouplings& c, int i, int j, int k, int l);

}  // namespace ysyk
