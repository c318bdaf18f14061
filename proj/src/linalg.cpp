// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/linalg.hpp"

#include "ysyk/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace ysyk {

EigenPairs eigh(const MatC& a, bool want_vectors, Index il, Index iu) {
    const Index n = a.rows();
    if (a.cols() != n) throw InvalidArgument("eigh: matrix is not square");
    EigenPairs out;
    if (n == 0) return out;
    const bool subset = il >= 0 || iu >= 0;
    if (subset && (il < 0 || iu < il || iu >= n)) throw InvalidArgument("eigh: bad index range");

    MatC work = a;
    VecD w(n);
    const Index ncols = subset ? iu - il + 1 : n;
    MatC z;
    if (want_vectors) z.resize(n, ncols);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max<Index>(1, n)));
    lapack_int m = 0;
    const lapack_int info = LAPACKE_zheevr(
        LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', subset ? 'I' : 'A', 'L', static_cast<lapack_int>(n),
        work.data(), static_cast<lapack_int>(n), 0.0, 0.0, static_cast<lapack_int>(il + 1),
        static_cast<lapack_int>(iu + 1), 0.0, &m, w.data(), want_vectors ? z.data() : nullptr,
        static_cast<lapack_int>(n), isuppz.data());
    if (info != 0) throw SolverError("zheevr failed, info=" + std::to_string(info));
    out.values = w.head(m);
    if (want_vectors) out.vectors = z.leftCols(m);
    return out;
}

void orthonormalize(MatC& x) {
    const Index p = x.cols();
    Eigen::HouseholderQR<MatC> qr(x);
    MatC q = qr.householderQ() * MatC::Identity(x.rows(), p);
    x = std::move(q);
}

namespace {

MatC random_block(Index n, Index p, std::uint64_t seed) {
    Rng rng(seed);
    MatC x(n, p);
    for (Index c = 0; c < p; ++c)
        for (Index r = 0; r < n; ++r) x(r, c) = cplx(rng.normal(), rng.normal());
    return x;
}

// Scaled Chebyshev filter damping [a, b]; lo is an estimate of the lowest eigenvalue.
MatC chebyshev_filter(const SpMat& h, const MatC& x, int degree, double a, double b, double lo) {
    const double e = (b - a) / 2.0;
    const double c = (b + a) / 2.0;
    double sigma = e / (lo - c);
    const double tau = 2.0 / sigma;
    MatC prev = x;
    MatC cur = (h * x - c * x) * (sigma / e);
    for (int i = 2; i <= degree; ++i) {
        const double s_new = 1.0 / (tau - sigma);
        MatC next = (h * cur - c * cur) * (2.0 * s_new / e) - (sigma * s_new) * prev;
        prev = std::move(cur);
        cur = std::move(next);
        sigma = s_new;
    }
    return cur;
}

}  // namespace

std::pair<double, double> spectral_bounds(const SpMat& h, int steps, std::uint64_t seed) {
    const Index n = h.rows();
    if (n == 0) throw InvalidArgument("spectral_bounds: empty matrix");
    steps = static_cast<int>(std::min<Index>(steps, n));
    VecC v = random_block(n, 1, seed).col(0);
    v.normalize();
    VecC v_prev = VecC::Zero(n);
    std::vector<double> alpha, beta;
    double b_prev = 0.0;
    for (int j = 0; j < steps; ++j) {
        VecC w = h * v - b_prev * v_prev;
        const double a = v.dot(w).real();
        w -= a * v;
        alpha.push_back(a);
        const double b = w.norm();
        beta.push_back(b);
        if (b < 1e-14 * std::max(1.0, std::abs(a))) break;
        v_prev = v;
        v = w / b;
        b_prev = b;
    }
    const Index m = static_cast<Index>(alpha.size());
    MatD t = MatD::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<MatD> es(t, Eigen::EigenvaluesOnly);
    const double pad = beta.back();
    return {es.eigenvalues()(0) - pad, es.eigenvalues()(m - 1) + pad};
}

EigenPairs lowest_k(const SpMat& h, int k, const LowestOptions& opt) {
    const Index n = h.rows();
    if (k < 1 || k > n) throw InvalidArgument("lowest_k: k out of range");
    const Index p = std::min<Index>(n, k + (opt.extra > 0 ? opt.extra : std::max(8, k / 4)));
    if (p == n) {
        // Block spans the space; a dense solve is both exact and cheaper.
        EigenPairs full = eigh(MatC(h), true, 0, k - 1);
        return full;
    }
    const auto [lo, hi] = spectral_bounds(h, 60, opt.seed ^ 0x5bd1e995ULL);
    const double scale = std::max(std::abs(lo), std::abs(hi));

    MatC x = random_block(n, p, opt.seed);
    orthonormalize(x);
    double cutoff = lo + 0.5 * (hi - lo);
    double lowest = lo;
    EigenPairs out;
    for (int it = 1; it <= opt.max_iter; ++it) {
        MatC y = chebyshev_filter(h, x, opt.degree, cutoff, hi, lowest);
        orthonormalize(y);
        MatC hy = h * y;
        MatC g = y.adjoint() * hy;
        g = (g + g.adjoint()).eval() * 0.5;
        EigenPairs rr = eigh(g, true);
        x = y * rr.vectors;
        MatC hx = hy * rr.vectors;
        double worst = 0.0;
        for (Index c = 0; c < k; ++c) worst = std::max(worst, (hx.col(c) - rr.values(c) * x.col(c)).norm());
        cutoff = rr.values(p - 1);
        lowest = std::min(lowest, rr.values(0));
        if (worst <= opt.tol * scale) {
            out.values = rr.values.head(k);
            out.vectors = x.leftCols(k);
            out.iterations = it;
            return out;
        }
    }
    throw SolverError("lowest_k did not converge after " + std::to_string(opt.max_iter) + " iterations");
}

}  // namespace ysyk
