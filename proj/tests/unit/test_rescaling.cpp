// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/disorder.hpp"
#include "ysyk/hamiltonian.hpp"
#include "ysyk/otoc.hpp"
#include "ysyk/rescaling.hpp"
#include "ysyk/rng.hpp"
#include "ysyk/stats.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace ysyk;

TEST_SUITE("rescaling") {

TEST_CASE("closed-form moments at N = 8") {
    CHECK(syk2_tr_h2(8, 1.0) == doctest::Approx(2.5));
    CHECK(syk4_tr_h2(8, 1.0) == doctest::Approx(12.0 / 512.0 * 15.0));
    CHECK(syk2_tr_h2(8, 2.0) == doctest::Approx(4.0 * 2.5));
}

TEST_CASE("sigma_h is shift invariant") {
    const auto s = build_space(6, 2, 1);
    const auto h = build_ysyk(s, ModelParams{}, sample_ysyk(6, 2, 1.0, 4)).matrix;
    SpMat id(h.rows(), h.cols());
    id.setIdentity();
    const SpMat shifted = h + cplx(-2.5, 0.0) * id;
    CHECK(sigma_h(shifted) == doctest::Approx(sigma_h(h)).epsilon(1e-12));
    CHECK(trace_moment1(shifted) == doctest::Approx(trace_moment1(h) - 2.5));
}

TEST_CASE("boson quadrature trace equals the cutoff") {
    for (int nb = 1; nb <= 5; ++nb) {
        CHECK(boson_quadrature_trace(nb) == doctest::Approx(static_cast<double>(nb)));
        // direct: (a + a^dag)^2 diagonal is 2n+1 except the top level, which has n
        double s = 0.0;
        for (int n = 0; n <= nb; ++n) s += (n < nb) ? 2 * n + 1 : n;
        CHECK(s / (nb + 1) == doctest::Approx(static_cast<double>(nb)));
    }
}

TEST_CASE("alpha in the small-omega regime") {
    CHECK(alpha_small_omega(AlphaKind::sff, 8, 1, 1.0, 0.5) == doctest::Approx(std::sqrt(10.0 / 9.0)));
    CHECK(alpha_small_omega(AlphaKind::sff, 8, 1, 1.0, 0.5) == doctest::Approx(1.0541).epsilon(1e-4));
    CHECK(alpha_small_omega(AlphaKind::otoc, 8, 1, 1.0, 0.5) == doctest::Approx(1.0));
    CHECK(alpha_small_omega(AlphaKind::sff, 8, 2, 2.0, 0.3) ==
          doctest::Approx(2.0 * alpha_small_omega(AlphaKind::sff, 8, 2, 1.0, 0.3)));
    CHECK(alpha_small_omega_simplified(1, 1.0, 0.5) == doctest::Approx(1.0));

    MomentParams p;
    p.omega0 = 0.5;
    const auto f = rescale_factors(p, false);
    CHECK(f.regime == "small_omega");
    CHECK(f.alpha_otoc == doctest::Approx(1.0));
    CHECK_FALSE(f.c_sff.has_value());
}

TEST_CASE("C_SFF table for N = 8") {
    // M = 2 is printed as 1.749; the formulas give 1.794
    const std::array<double, 10> table = {2.537, 1.794, 1.465, 1.269, 1.134, 1.036, 0.959, 0.897, 0.846, 0.802};
    for (int M = 1; M <= 10; ++M) CHECK(std::abs(c_sff_large_omega(8, M) - table[M - 1]) < 1e-3);
    CHECK(std::abs(c_sff_large_omega(8, 2) - 1.749) > 0.04);
}

TEST_CASE("C_SFF has no g or omega0 dependence") {
    for (double g : {0.5, 1.0, 3.0})
        for (double w : {10.0, 1e3}) {
            MomentParams p;
            p.g = g;
            p.omega0 = w;
            const double ratio = sigma_h_analytic(AnalyticModel::h_eff, p) / sigma_h_analytic(AnalyticModel::syk4, p);
            CHECK(ratio / (g * g / (w * w)) == doctest::Approx(c_sff_large_omega(8, 4)).epsilon(1e-12));
            const auto f = rescale_factors(p, true);
            REQUIRE(f.c_sff.has_value());
            CHECK(f.alpha_sff == doctest::Approx(*f.c_sff * g * g / (w * w)));
        }
}

TEST_CASE("moment audit against Monte Carlo") {
    MomentParams p;
    p.N = 8;
    p.M = 4;
    const auto rep = moment_audit(p, 200, 17);
    CHECK(rep.n_samples == 200);
    for (const auto& r : rep.rows) {
        INFO(r.name, " analytic ", r.analytic, " numeric ", r.numeric, " +- ", r.err);
        if (r.name == "heff_tr_h_sq") {
            // printed variance term; the exact Wick value is about 4% lower
            CHECK(r.z < 0.0);
            continue;
        }
        CHECK(std::abs(r.z) < 3.0);
    }
    CHECK(rep.at("syk2_tr_h2").analytic == doctest::Approx(2.5));
    CHECK(rep.at("heff_tr_h_sq_corrected").analytic == doctest::Approx(1.58036).epsilon(1e-5));
    CHECK_THROWS((void)rep.at("nonexistent"));
}

TEST_CASE("exact SYK4 nested-commutator average matches sampling") {
    const int N = 8;
    const auto s = build_space(N, 0, 1);
    const VecD a = occupation_sign_diag(s, 0), b = occupation_sign_diag(s, 1);
    std::vector<double> v;
    for (std::uint64_t k = 0; k < 300; ++k) {
        const auto h = build_sykq(s, sample_sykq(N, 4, 1.0, hash64(3, k)));
        v.push_back(nested_commutator_trace(h.matrix, a, b) / static_cast<double>(h.dim()));
    }
    const auto m = mean_stderr(v);
    CHECK(std::abs(m.mean - syk4_nested_commutator_mean(N, 1.0)) < 3.0 * m.err);
    CHECK(syk4_nested_commutator_mean(N, 2.0) == doctest::Approx(4.0 * syk4_nested_commutator_mean(N, 1.0)));
}

TEST_CASE("C_OTOC estimator plumbing") {
    CHECK(alpha_otoc_from_traces(0.37, 0.37) == 1.0);
    CHECK(alpha_otoc_from_traces(4.0, 1.0) == doctest::Approx(2.0));
    COtocOptions o;
    o.drift_samples = 4;
    const auto r = c_otoc_large_omega(4, 2, 1e3, 12, 5, o);
    CHECK(r.n_samples == 12);
    CHECK(r.value > 0.0);
    CHECK(r.err > 0.0);
    CHECK(r.denominator == doctest::Approx(syk4_nested_commutator_mean(4, 1.0)));
    CHECK(r.drift.has_value());
    CHECK_THROWS_AS((void)c_otoc_large_omega(4, 2, 1e3, 1, 5), InvalidArgument);
}

}  // TEST_SUITE
