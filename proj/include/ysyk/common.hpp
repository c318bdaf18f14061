// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ysyk {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using SpMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor, std::int64_t>;
using MatC = Eigen::MatrixXcd;
using MatD = Eigen::MatrixXd;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;

// Thrown for malformed inputs that a caller could have checked up front.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failure inside a solver (non-convergence, LAPACK info != 0).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[nodiscard]] double binomial(int n, int k) noexcept;

[[nodiscard]] std::uint64_t binomial_u64(int n, int k) noexcept;

}  // namespace ysyk
