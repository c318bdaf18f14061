// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/disorder.hpp"

#include "ysyk/rng.hpp"

#include <cmath>
#include <string>

namespace ysyk {

namespace {

// Fills a Hermitian n x n matrix in row-major upper-triangle order.
MatC sample_hermitian(Rng& rng, Index n, double variance) {
    MatC m(n, n);
    const double sd_diag = std::sqrt(variance);
    const double sd_off = std::sqrt(variance / 2.0);
    for (Index a = 0; a < n; ++a) {
        m(a, a) = cplx(sd_diag * rng.normal(), 0.0);
        for (Index b = a + 1; b < n; ++b) {
            const double x = sd_off * rng.normal();
            const double y = sd_off * rng.normal();
            m(a, b) = cplx(x, y);
            m(b, a) = cplx(x, -y);
        }
    }
    return m;
}

void build_sets(std::vector<std::vector<int>>& out, std::vector<int>& cur, int start, int N, int r) {
    if (static_cast<int>(cur.size()) == r) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < N; ++i) {
        cur.push_back(i);
        build_sets(out, cur, i + 1, N, r);
        cur.pop_back();
    }
}

}  // namespace

MatC YsykCouplings::slice(int k) const {
    MatC m(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = (*this)(i, j, k);
    return m;
}

std::vector<std::vector<int>> index_sets(int N, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    build_sets(out, cur, 0, N, r);
    return out;
}

YsykCouplings sample_ysyk(int N, int M, double g, std::uint64_t seed) {
    if (!(g > 0.0)) throw InvalidArgument("g must be > 0");
    if (N < 1 || M < 0) throw InvalidArgument("invalid YSYK shape");
    YsykCouplings c;
    c.N = N;
    c.M = M;
    c.g = g;
    c.seed = seed;
    c.data.resize(static_cast<std::size_t>(N) * N * M);
    Rng rng(seed);
    for (int k = 0; k < M; ++k) {
        const MatC s = sample_hermitian(rng, N, g * g);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) c.data[(static_cast<std::size_t>(k) * N + i) * N + j] = s(i, j);
    }
    return c;
}

double sykq_variance(int N, int q, double J) {
    if (q <= 0 || q % 2 != 0) throw InvalidArgument("q must be a positive even integer");
    double fact = 1.0;
    for (int i = 2; i <= q / 2; ++i) fact *= i;
    double fact_m1 = 1.0;
    for (int i = 2; i <= q / 2 - 1; ++i) fact_m1 *= i;
    return J * J * fact * fact_m1 / std::pow(static_cast<double>(N), q - 1);
}

SykqCouplings sample_sykq(int N, int q, double J, std::uint64_t seed) {
    if (q % 2 != 0) throw InvalidArgument("q must be even, got " + std::to_string(q));
    if (q != 2 && q != 4) throw InvalidArgument("only q in {2, 4} is supported");
    if (N < q) throw InvalidArgument("SYK_q requires N >= q");
    SykqCouplings c;
    c.N = N;
    c.q = q;
    c.J = J;
    c.seed = seed;
    c.variance = sykq_variance(N, q, J);
    c.sets = index_sets(N, q / 2);
    Rng rng(seed);
    c.matrix = sample_hermitian(rng, static_cast<Index>(c.sets.size()), c.variance);
    return c;
}

cplx lowrank_coupling(const LowRankCouplings& c, int i, int j, int k, int l) {
    cplx s = 0.0;
    for (int m = 0; m < c.M; ++m) s += 0.5 * (c.g_at(i, k, m) * c.g_at(j, l, m) - c.g_at(i, l, m) * c.g_at(j, k, m));
    return s / static_cast<double>(c.M);
}

LowRankCouplings sample_lowrank(int N, int M, std::uint64_t seed, LowRankField field) {
    if (M < 1) throw InvalidArgument("low-rank model requires M >= 1");
    if (N < 4) throw InvalidArgument("low-rank model requires N >= 4");
    LowRankCouplings c;
    c.N = N;
    c.M = M;
    c.seed = seed;
    c.field = field;
    c.variance = 2.0 * std::sqrt(static_cast<double>(M) / std::pow(static_cast<double>(N), 3));
    c.g.assign(static_cast<std::size_t>(N) * N * M, cplx(0.0, 0.0));
    Rng rng(seed);
    const double sd = std::sqrt(c.variance);
    const double sd_off = std::sqrt(c.variance / 2.0);
    for (int s = 0; s < M; ++s) {
        for (int i = 0; i < N; ++i) {
            for (int j = i; j < N; ++j) {
                cplx v;
                if (field == LowRankField::real || i == j) {
                    v = sd * rng.normal();
                } else {
                    const double re = rng.normal();
                    v = cplx(sd_off * re, sd_off * rng.normal());
                }
                c.g[(static_cast<std::size_t>(s) * N + i) * N + j] = v;
                c.g[(static_cast<std::size_t>(s) * N + j) * N + i] = std::conj(v);
            }
        }
    }
    c.pairs = index_sets(N, 2);
    const Index P = static_cast<Index>(c.pairs.size());
    c.matrix.resize(P, P);
    for (Index a = 0; a < P; ++a)
        for (Index b = 0; b < P; ++b)
            c.matrix(a, b) = lowrank_coupling(c, c.pairs[a][0], c.pairs[a][1], c.pairs[b][0], c.pairs[b][1]);
    return c;
}

}  // namespace ysyk
