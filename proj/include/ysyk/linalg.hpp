// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file linalg.hpp
 * @brief Dense and iterative Hermitian eigensolvers.
 */

#pragma once

#include "ysyk/common.hpp"

namespace ysyk {

struct EigenPairs {
    VecD values;   // ascending
    MatC vectors;  // columns; empty when not requested
    int iterations = 0;
};

// LAPACK zheevr on a copy of `a`. With il/iu >= 0 only eigenpairs il..iu
// (0-based, inclusive) are computed.
[[nodiscard]] EigenPairs eigh(const MatC& a, bool want_vectors, Index il = -1, Index iu = -1);

struct LowestOptions {
    double tol = 1e-10;     // residual norm relative to the spectral radius
    int max_iter = 500;
    int extra = 0;          // guard vectors beyond k; 0 picks max(8, k/4)
    int degree = 12;        // Chebyshev filter degree
    std::uint64_t seed = 1;
};

// k lowest eigenpairs of a sparse Hermitian matrix: Lanczos bounds followed by
// Chebyshev-filtered block subspace iteration with Rayleigh-Ritz.
// Throws SolverError with the iteration count on non-convergence.
[[nodiscard]] EigenPairs lowest_k(const SpMat& h, int k, const LowestOptions& opt = {});

// Lanczos estimate of [lambda_min, lambda_max]; the bounds are widened by the
// final residual so they enclose the spectrum in practice.
[[nodiscard]] std::pair<double, double> spectral_bounds(const SpMat& h, int steps = 40, std::uint64_t seed = 1);

// Modified Gram-Schmidt orthonormalization of the columns, twice.
void orthonormalize(MatC& x);

}  // namespace ysyk
