// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/disorder.hpp"
#include "ysyk/hamiltonian.hpp"
#include "ysyk/linalg.hpp"
#include "ysyk/spectral.hpp"

#include <doctest.h>

using namespace ysyk;

TEST_SUITE("linalg") {

TEST_CASE("dense solver reproduces a known spectrum") {
    const Index n = 40;
    MatC q = MatC::Random(n, n);
    Eigen::HouseholderQR<MatC> qr(q);
    const MatC u = qr.householderQ();
    VecD ev(n);
    for (Index k = 0; k < n; ++k) ev(k) = -3.0 + 0.15 * static_cast<double>(k);
    const MatC a = u * ev.cast<cplx>().asDiagonal() * u.adjoint();
    const auto r = eigh(0.5 * (a + a.adjoint()), true);
    CHECK((r.values - ev).cwiseAbs().maxCoeff() < 1e-12);
    const MatC back = r.vectors * r.values.cast<cplx>().asDiagonal() * r.vectors.adjoint();
    CHECK((back - a).cwiseAbs().maxCoeff() < 1e-12);

    const auto sub = eigh(0.5 * (a + a.adjoint()), true, 0, 4);
    REQUIRE(sub.values.size() == 5);
    CHECK((sub.values - ev.head(5)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("iterative lowest-k matches the dense solver") {
    const auto space = build_space(8, 4, 1);
    ModelParams p;
    p.omega0 = 5.0;
    const auto h = build_ysyk(space, p, sample_ysyk(8, 4, 1.0, 3));
    const VecD ref = eigh(h.dense(), false).values;
    for (int k : {1, 10, 70}) {
        const auto r = lowest_k(h.matrix, k);
        REQUIRE(r.values.size() == k);
        CHECK((r.values - ref.head(k)).cwiseAbs().maxCoeff() < 1e-8);
        const MatC res = MatC(h.matrix * r.vectors) - r.vectors * r.values.cast<cplx>().asDiagonal();
        CHECK(res.colwise().norm().maxCoeff() < 1e-8);
    }
    CHECK_THROWS_AS((void)lowest_k(h.matrix, 0), InvalidArgument);
}

TEST_CASE("spectral bounds enclose the spectrum") {
    const auto space = build_space(6, 0, 1);
    const auto h = build_sykq(space, sample_sykq(6, 4, 1.0, 2));
    const VecD e = eigh(h.dense(), false).values;
    const auto [lo, hi] = spectral_bounds(h.matrix);
    CHECK(lo <= e(0) + 1e-10);
    CHECK(hi >= e(e.size() - 1) - 1e-10);
}

TEST_CASE("diagonalize dispatches on mode") {
    const auto space = build_space(6, 2, 1);
    ModelParams p;
    const auto h = build_ysyk(space, p, sample_ysyk(6, 2, 1.0, 9));
    DiagOptions full;
    full.vectors = true;
    const Spectrum a = diagonalize(h, full);
    CHECK(a.size() == h.dim());
    CHECK(a.has_vectors());
    DiagOptions it;
    it.mode = DiagMode::lowest_k;
    it.k = 12;
    const Spectrum b = diagonalize(h, it);
    CHECK((b.eigenvalues - a.eigenvalues.head(12)).cwiseAbs().maxCoeff() < 1e-8);
    DiagOptions small;
    small.dense_budget = 10;
    CHECK_THROWS_AS((void)diagonalize(h, small), InvalidArgument);
}

}  // TEST_SUITE
