// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracle.hpp"

#include "ysyk/hilbert.hpp"

#include <doctest.h>

#include <bit>

using namespace ysyk;

TEST_SUITE("hilbert") {

TEST_CASE("dimensions") {
    const auto a = build_space(8, 4, 1);
    CHECK(a.fermion_dim == 70);
    CHECK(a.boson_dim == 16);
    CHECK(a.total_dim == 1120);

    const auto b = build_space(4, 0, 1);
    CHECK(b.total_dim == 6);
    CHECK(b.boson_dim == 1);

    const auto c = build_space(6, 3, 1);
    CHECK(c.total_dim == 160);

    const auto d = build_space(4, 2, 3);
    CHECK(d.boson_dim == 16);
    CHECK(d.n_particles == 2);
}

TEST_CASE("invalid spaces are rejected") {
    CHECK_THROWS_AS((void)build_space(7, 2, 1), InvalidArgument);
    CHECK_THROWS_AS((void)build_space(4, 2, 0), InvalidArgument);
    CHECK_THROWS_AS((void)build_space(0, 0, 1), InvalidArgument);
}

TEST_CASE("fermion basis is sorted, fixed weight, and indexable") {
    for (int N : {2, 4, 6, 8, 10}) {
        const FermionBasis fb(N, N / 2);
        REQUIRE(fb.size() == binomial_u64(N, N / 2));
        for (std::size_t k = 0; k < fb.size(); ++k) {
            CHECK(std::popcount(fb[k]) == N / 2);
            CHECK(fb.index_of(fb[k]) == k);
            if (k) CHECK(fb[k - 1] < fb[k]);
        }
    }
}

TEST_CASE("boson basis round trip") {
    const BosonBasis bb(3, 2);
    REQUIRE(bb.size() == 27);
    for (std::size_t i = 0; i < bb.size(); ++i) {
        const auto occ = bb.decode(i);
        CHECK(bb.encode(occ) == i);
        int tot = 0;
        for (int k = 0; k < 3; ++k) {
            CHECK(occ[k] == bb.occupation(i, k));
            tot += occ[k];
        }
        CHECK(bb.total(i) == tot);
    }
}

TEST_CASE("hop examples") {
    const auto a = apply_hop(0b0011, 2, 0);
    REQUIRE(a.has_value());
    CHECK(a->word == 0b0110);
    // occupied mode 1 sits between the acted modes
    const MatC ref = oracle::fermion_c(4, 2).adjoint() * oracle::fermion_c(4, 0);
    CHECK(ref(0b0110, 0b0011).real() == -1.0);
    CHECK(a->sign == -1);

    const auto b = apply_hop(0b0011, 0, 0);
    REQUIRE(b.has_value());
    CHECK(b->word == 0b0011);
    CHECK(b->sign == 1);

    CHECK_FALSE(apply_hop(0b0011, 3, 2).has_value());
    CHECK_FALSE(apply_hop(0b0011, 1, 0).has_value());
}

TEST_CASE("number operator") {
    CHECK(number_op_diag(0b0101, 0) == 1);
    CHECK(number_op_diag(0b0101, 1) == 0);
    for (int i = 0; i < 8; ++i) CHECK(number_op_diag(0xFF, i) == 1);
}

TEST_CASE("hop followed by its reverse returns the word with sign +1") {
    const FermionBasis fb(8, 4);
    for (Word w : fb.states()) {
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                if (i == j) continue;
                const auto a = apply_hop(w, i, j);
                if (!a) continue;
                const auto b = apply_hop(a->word, j, i);
                REQUIRE(b.has_value());
                CHECK(b->word == w);
                CHECK(a->sign * b->sign == 1);
            }
        }
    }
}

TEST_CASE("hop matrix equals the Jordan-Wigner construction") {
    for (int N : {2, 3, 4, 5, 6}) {
        const Index F = Index{1} << N;
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                const MatC ref = oracle::fermion_c(N, i).adjoint() * oracle::fermion_c(N, j);
                MatC mine = MatC::Zero(F, F);
                for (Word w = 0; w < static_cast<Word>(F); ++w)
                    if (auto r = apply_hop(w, i, j)) mine(static_cast<Index>(r->word), static_cast<Index>(w)) = r->sign;
                CHECK((ref - mine).cwiseAbs().maxCoeff() == 0.0);
            }
        }
    }
}

TEST_CASE("operator strings equal products of Jordan-Wigner matrices") {
    const int N = 5;
    const Index F = Index{1} << N;
    const std::vector<std::pair<std::vector<int>, std::vector<int>>> cases = {
        {{0, 3}, {1, 4}}, {{4, 1}, {2, 0}}, {{2}, {2}}, {{0, 1}, {0, 1}}, {{3, 2}, {4, 1}}};
    for (const auto& [cr, an] : cases) {
        MatC ref = MatC::Identity(F, F);
        for (int i : cr) ref = ref * oracle::fermion_c(N, i).adjoint();
        for (int j : an) ref = ref * oracle::fermion_c(N, j);
        MatC mine = MatC::Zero(F, F);
        for (Word w = 0; w < static_cast<Word>(F); ++w)
            if (auto r = apply_string(w, cr, an)) mine(static_cast<Index>(r->word), static_cast<Index>(w)) = r->sign;
        CHECK((ref - mine).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("occupation sign diagonal") {
    const auto s = build_space(4, 1, 1);
    const VecD a = occupation_sign_diag(s, 1);
    REQUIRE(a.size() == static_cast<Index>(s.total_dim));
    for (std::size_t f = 0; f < s.fermion_dim; ++f)
        for (std::size_t b = 0; b < s.boson_dim; ++b)
            CHECK(a(static_cast<Index>(s.index(f, b))) == (number_op_diag(s.fermions[f], 1) ? 1.0 : -1.0));
    CHECK(a.sum() == doctest::Approx(0.0));
}

}  // TEST_SUITE
