// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracle.hpp"

#include "ysyk/disorder.hpp"
#include "ysyk/hamiltonian.hpp"
#include "ysyk/hilbert.hpp"
#include "ysyk/linalg.hpp"
#include "ysyk/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace ysyk;

namespace {

double max_abs(const MatC& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Number operator on the composite space, from the basis words.
SpMat total_number(const HilbertSpace& s) {
    std::vector<Eigen::Triplet<cplx, std::int64_t>> t;
    for (std::size_t f = 0; f < s.fermion_dim; ++f)
        for (std::size_t b = 0; b < s.boson_dim; ++b) {
            const auto i = static_cast<std::int64_t>(s.index(f, b));
            t.emplace_back(i, i, cplx(std::popcount(s.fermions[f]), 0.0));
        }
    SpMat n(static_cast<Index>(s.total_dim), static_cast<Index>(s.total_dim));
    n.setFromTriplets(t.begin(), t.end());
    return n;
}

// All N/2-subset sums of single-particle levels.
std::vector<double> fillings(const VecD& eps, int n) {
    std::vector<double> out;
    const int N = static_cast<int>(eps.size());
    for (Word w = 0; w < (Word{1} << N); ++w) {
        if (std::popcount(w) != n) continue;
        double e = 0.0;
        for (int i = 0; i < N; ++i)
            if ((w >> i) & 1U) e += eps(i);
        out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("ysyk equals the dense Kronecker oracle") {
    for (int Nb : {1, 2}) {
        const auto space = build_space(4, 2, Nb);
        const auto c = sample_ysyk(4, 2, 1.0, 31 + Nb);
        ModelParams p;
        p.omega0 = 0.7;
        const auto h = build_ysyk(space, p, c);
        const MatC ref = oracle::restrict_to(oracle::ysyk_full(c, Nb, p.omega0), space);
        CHECK(max_abs(h.dense() - ref) <= 1e-12);
    }
}

TEST_CASE("ysyk free-boson limit") {
    const auto space = build_space(4, 2, 2);
    auto c = sample_ysyk(4, 2, 1.0, 1);
    for (auto& v : c.data) v = 0.0;
    ModelParams p;
    p.omega0 = 1.5;
    const auto h = build_ysyk(space, p, c);
    const MatC d = h.dense();
    CHECK(max_abs(d - MatC(d.diagonal().asDiagonal())) == 0.0);
    for (std::size_t f = 0; f < space.fermion_dim; ++f)
        for (std::size_t b = 0; b < space.boson_dim; ++b) {
            const Index i = static_cast<Index>(space.index(f, b));
            CHECK(d(i, i).real() == doctest::Approx(1.5 * (space.bosons.total(b) + 1.0)));
        }
}

TEST_CASE("ysyk trace equals the free-boson value") {
    const auto space = build_space(8, 4, 1);
    const auto c = sample_ysyk(8, 4, 1.0, 5);
    ModelParams p;
    p.omega0 = 0.3;
    const auto h = build_ysyk(space, p, c);
    const double tr = h.matrix.diagonal().sum().real() / static_cast<double>(h.dim());
    CHECK(tr == doctest::Approx(0.3 * 4));
    CHECK(hermiticity_defect(h.matrix) == 0.0);
    CHECK_THROWS_AS((void)build_ysyk(space, ModelParams{0.0, 1.0, 0.0, 1.0}, c), InvalidArgument);
}

TEST_CASE("every model conserves particle number") {
    const auto s = build_space(4, 2, 1);
    ModelParams p;
    const auto h = build_ysyk(s, p, sample_ysyk(4, 2, 1.0, 2));
    const SpMat n = total_number(s);
    CHECK(max_abs(MatC(h.matrix * n - n * h.matrix)) == 0.0);

    // on the full Fock space the oracle commutes with N, and the sector
    // blocks of the builders match it
    const auto f = build_space(6, 0, 1);
    const auto s4 = sample_sykq(6, 4, 1.0, 9);
    const MatC full = oracle::set_operator(6, s4.sets, s4.matrix);
    MatC Nop = MatC::Zero(64, 64);
    for (int i = 0; i < 6; ++i) Nop += oracle::number_op(6, i);
    CHECK(max_abs(full * Nop - Nop * full) < 1e-12);
    CHECK(max_abs(build_sykq(f, s4).dense() - oracle::restrict_to(full, f)) <= 1e-12);
}

TEST_CASE("syk2 spectrum equals single-particle fillings") {
    const auto space = build_space(4, 0, 1);
    const auto c = sample_sykq(4, 2, 1.0, 77);
    const auto h = build_sykq(space, c);
    const VecD mb = eigh(h.dense(), false).values;
    const VecD sp = eigh(c.matrix, false).values;
    const auto ref = fillings(sp, 2);
    REQUIRE(static_cast<Index>(ref.size()) == mb.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(mb(static_cast<Index>(k)) == doctest::Approx(ref[k]).epsilon(1e-12));

    const auto space8 = build_space(8, 0, 1);
    const auto c8 = sample_sykq(8, 2, 1.0, 78);
    const VecD mb8 = eigh(build_sykq(space8, c8).dense(), false).values;
    const auto ref8 = fillings(eigh(c8.matrix, false).values, 4);
    double dev = 0.0;
    for (std::size_t k = 0; k < ref8.size(); ++k) dev = std::max(dev, std::abs(mb8(static_cast<Index>(k)) - ref8[k]));
    CHECK(dev < 1e-12);
}

TEST_CASE("syk4 with zero couplings is zero") {
    const auto space = build_space(6, 0, 1);
    auto c = sample_sykq(6, 4, 1.0, 1);
    c.matrix.setZero();
    CHECK(build_sykq(space, c).matrix.nonZeros() == 0);
    CHECK_THROWS_AS((void)build_sykq(build_space(6, 1, 1), c), InvalidArgument);
}

TEST_CASE("syk4 equals the oracle at N=4") {
    const auto space = build_space(4, 0, 1);
    const auto c = sample_sykq(4, 4, 1.0, 12);
    const MatC ref = oracle::restrict_to(oracle::set_operator(4, c.sets, c.matrix), space);
    CHECK(max_abs(build_sykq(space, c).dense() - ref) <= 1e-12);
}

TEST_CASE("effective Hamiltonian equals the oracle and both assembly forms agree") {
    const int N = 6, M = 3;
    const auto space = build_space(N, 0, 1);
    const auto c = sample_ysyk(N, M, 1.0, 4);
    const double w = 2.0;
    const Index F = Index{1} << N;
    MatC full = MatC::Zero(F, F);
    for (int k = 0; k < M; ++k) {
        const MatC G = oracle::hopping(c, k);
        full += G * G;
    }
    full *= -1.0 / (2.0 * w * w * M * N);
    const auto h = build_sw_effective(space, c, w);
    CHECK(max_abs(h.dense() - oracle::restrict_to(full, space)) <= 1e-12);
    CHECK(max_abs(h.dense() - build_sw_effective_tensor(space, c, w).dense()) <= 1e-12);
    CHECK(hermiticity_defect(h.matrix) == 0.0);

    // entries scale as 1/omega0^2
    CHECK(max_abs(4.0 * build_sw_effective(space, c, 2 * w).dense() - h.dense()) <= 1e-14);
}

TEST_CASE("lowrank equals the oracle") {
    const int N = 6;
    const auto space = build_space(N, 0, 1);
    const auto c = sample_lowrank(N, 3, 8);
    const MatC ref = oracle::restrict_to(oracle::set_operator(N, c.pairs, c.matrix), space);
    const auto h = build_lowrank(space, c);
    CHECK(max_abs(h.dense() - ref) <= 1e-12);
    CHECK(hermiticity_defect(h.matrix) == 0.0);
}

TEST_CASE("eigenvalue sum equals the trace") {
    const auto space = build_space(6, 2, 1);
    ModelParams p;
    p.omega0 = 0.4;
    const auto h = build_ysyk(space, p, sample_ysyk(6, 2, 1.0, 3));
    const VecD e = eigh(h.dense(), false).values;
    const double hmax = h.matrix.coeffs().cwiseAbs().maxCoeff();
    CHECK(std::abs(e.sum() - h.matrix.diagonal().sum().real()) < 1e-9 * h.dim() * hmax);
}

TEST_CASE("triplet export round trip") {
    const auto space = build_space(4, 2, 1);
    const auto h = build_ysyk(space, ModelParams{}, sample_ysyk(4, 2, 1.0, 6));
    std::stringstream ss;
    export_triplets(h, ss);
    const SpMat back = import_triplets(ss);
    CHECK(max_abs(MatC(back - h.matrix)) == 0.0);

    std::stringstream bad("not a header\n");
    CHECK_THROWS_AS((void)import_triplets(bad), InvalidArgument);
}

}  // TEST_SUITE
