// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hamiltonian.hpp
 * @brief Sparse assembly of the Yukawa-SYK, complex SYK_q, effective and
 * low-rank quartic Hamiltonians.
 */

#pragma once

#include "ysyk/common.hpp"
#include "ysyk/disorder.hpp"
#include "ysyk/hilbert.hpp"

#include <cmath>
#include <iosfwd>
#include <map>
#include <string>

namespace ysyk {

struct ModelParams {
    double omega0 = 1.0;
    double g = 1.0;
    double mu = 0.0;  // housed for completeness; 0 at half filling
    double J = 1.0;

    // omega0 / g^{2/3}
    [[nodiscard]] double control_ratio() const { return omega0 / std::cbrt(g * g); }
    // omega0 giving a requested omega0 / g^{2/3}
    [[nodiscard]] static double omega0_for_ratio(double ratio, double g) { return ratio * std::cbrt(g * g); }
};

struct SparseHamiltonian {
    SpMat matrix;
    std::string model;
    std::map<std::string, double> params;

    [[nodiscard]] Index dim() const noexcept { return matrix.rows(); }
    [[nodiscard]] MatC dense() const { return MatC(matrix); }
};

// sum_ij h_ij c_i^dag c_j on a fermion basis.
[[nodiscard]] SpMat fermion_quadratic(const FermionBasis& basis, const MatC& h);

// sum_{I,J} J(I,J) c^dag_{i1}..c^dag_{ir} c_{j1}..c_{jr} over ordered r-subsets.
[[nodiscard]] SpMat fermion_set_operator(const FermionBasis& basis, const std::vector<std::vector<int>>& sets,
                                         const MatC& coupling);

[[nodiscard]] SparseHamiltonian build_ysyk(const HilbertSpace& space, const ModelParams& params,
                                           const YsykCouplings& c);

[[nodiscard]] SparseHamiltonian build_sykq(const HilbertSpace& space, const SykqCouplings& c);

// -(1/(2 omega0^2 M N)) sum_k G_k^2 with G_k = sum_ij g_{ij,k} c_i^dag c_j,
// on the fixed-filling fermion sector of `space` (bosons ignored).
[[nodiscard]] SparseHamiltonian build_sw_effective(const HilbertSpace& space, const YsykCouplings& c,
                                                   double omega0);
[[nodiscard]] SparseHamiltonian build_sw_effective(const YsykCouplings& c, double omega0);

// Same operator through the absorbed coupling J_{ij,i'j'} = (1/M) sum_k g_{ij,k} g_{i'j',k}
// and the prefactor -1/(2 omega0^2 N). Slow; used to cross-check the form above.
[[nodiscard]] SparseHamiltonian build_sw_effective_tensor(const HilbertSpace& space, const YsykCouplings& c,
                                                          double omega0);

[[nodiscard]] SparseHamiltonian build_lowrank(const HilbertSpace& space, const LowRankCouplings& c);

// Text triplets: a header line "# ysyk-triplets 1 <dim> <nnz>", then
// "row col re im" per stored entry, 0-based, 17 significant digits.
void export_triplets(const SparseHamiltonian& h, std::ostream& os);
[[nodiscard]] SpMat import_triplets(std::istream& is);

// Max |H - H^dag| entry; exact zero for every builder here.
[[nodiscard]] double hermiticity_defect(const SpMat& h);

}  // namespace ysyk
