// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/disorder.hpp"
#include "ysyk/hamiltonian.hpp"
#include "ysyk/linalg.hpp"
#include "ysyk/rng.hpp"
#include "ysyk/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace ysyk;

namespace {

VecD sorted_uniform(std::size_t n, std::uint64_t seed) {
    Rng r(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = r.uniform();
    std::sort(v.begin(), v.end());
    return Eigen::Map<VecD>(v.data(), static_cast<Index>(n));
}

VecD gue_levels(Index n, std::uint64_t seed) {
    Rng r(seed);
    MatC a(n, n);
    for (Index i = 0; i < n; ++i) {
        a(i, i) = r.normal();
        for (Index j = i + 1; j < n; ++j) {
            a(i, j) = cplx(r.normal(), r.normal()) / std::sqrt(2.0);
            a(j, i) = std::conj(a(i, j));
        }
    }
    return eigh(a, false).values;
}

// central half of a GUE spectrum, where the density is nearly flat
VecD bulk(const VecD& e) { return e.segment(e.size() / 4, e.size() / 2); }

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("diagonal Hamiltonian gives its sorted diagonal") {
    SparseHamiltonian h;
    h.matrix.resize(4, 4);
    h.matrix.insert(0, 0) = 3.0;
    h.matrix.insert(1, 1) = -1.0;
    h.matrix.insert(2, 2) = 2.0;
    h.matrix.insert(3, 3) = 0.5;
    const Spectrum s = diagonalize(h);
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(0.5));
    CHECK(s.eigenvalues(3) == doctest::Approx(3.0));
}

TEST_CASE("desk-scale YSYK spectrum size and iterative cross-check") {
    const auto space = build_space(8, 4, 1);
    ModelParams p;
    p.omega0 = 10.0;
    const auto h = build_ysyk(space, p, sample_ysyk(8, 4, 1.0, 1));
    const Spectrum full = diagonalize(h);
    CHECK(full.size() == 1120);
    DiagOptions o;
    o.mode = DiagMode::lowest_k;
    o.k = 70;
    const Spectrum low = diagonalize(h, o);
    CHECK(low.size() == 70);
    CHECK((low.eigenvalues - full.eigenvalues.head(70)).cwiseAbs().maxCoeff() < 1e-8);

    const auto cl = segment_clusters(full.eigenvalues);
    REQUIRE(cl.size() >= 2);
    CHECK(cl[0].second - cl[0].first == 70);
    const double mid = 10.0 * 2.0 + 5.0;
    CHECK(std::count_if(full.eigenvalues.begin(), full.eigenvalues.end(), [&](double x) { return x < mid; }) == 70);
}

TEST_CASE("equally spaced ladder has r = 1") {
    VecD e(50);
    for (Index i = 0; i < 50; ++i) e(i) = 0.3 * static_cast<double>(i);
    const auto g = gap_ratios(e);
    CHECK(g.ratios.size() == 48);
    CHECK(g.mean == doctest::Approx(1.0));
}

TEST_CASE("gap ratio degeneracy rules") {
    VecD e(5);
    e << 0.0, 1.0, 1.0, 2.0, 4.0;
    const auto g = gap_ratios(e);
    // spacings 1, 0, 1, 2 -> ratios 0, 0, 0.5
    REQUIRE(g.ratios.size() == 3);
    CHECK(g.ratios[0] == 0.0);
    CHECK(g.ratios[1] == 0.0);
    CHECK(g.ratios[2] == doctest::Approx(0.5));

    VecD flat = VecD::Constant(6, 2.0);
    CHECK_THROWS_AS((void)gap_ratios(flat), InvalidArgument);
    VecD pair(2);
    pair << 0.0, 1.0;
    CHECK_THROWS_AS((void)gap_ratios(pair), InvalidArgument);
}

TEST_CASE("gap ratios are affine invariant and bounded") {
    const VecD e = gue_levels(200, 4);
    const auto a = gap_ratios(e);
    const auto b = gap_ratios((3.5 * e.array() - 7.0).matrix());
    REQUIRE(a.ratios.size() == b.ratios.size());
    for (std::size_t k = 0; k < a.ratios.size(); ++k) {
        CHECK(a.ratios[k] >= 0.0);
        CHECK(a.ratios[k] <= 1.0);
        CHECK(b.ratios[k] == doctest::Approx(a.ratios[k]).epsilon(1e-9));
    }
    double integral = 0.0;
    for (double y : a.histogram.y) integral += y / a.histogram.y.size();
    CHECK(integral == doctest::Approx(1.0));
}

TEST_CASE("reference gap densities") {
    CHECK(reference_gap_density(GapClass::poisson, 0.0) == doctest::Approx(2.0));
    CHECK(reference_gap_density(GapClass::gue, 0.0) == 0.0);
    CHECK_THROWS_AS((void)reference_gap_density(GapClass::poisson, 1.5), InvalidArgument);
    CHECK_THROWS_AS((void)reference_gap_density(GapClass::gue, -0.1), InvalidArgument);
    for (GapClass c : {GapClass::poisson, GapClass::goe, GapClass::gue, GapClass::gse}) {
        double s = 0.0;
        const int n = 4000;
        for (int i = 0; i <= n; ++i)
            s += ((i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2)) * reference_gap_density(c, static_cast<double>(i) / n);
        CHECK(s / (3.0 * n) == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(reference_gap_mean(GapClass::poisson) == doctest::Approx(2.0 * std::numbers::ln2 - 1.0).epsilon(1e-10));
    // the surmise mean is 0.6027; the large-D value quoted for GUE is 0.599
    CHECK(std::abs(reference_gap_mean(GapClass::gue) - 0.599) < 0.005);
    CHECK(reference_gap_mean(GapClass::goe) == doctest::Approx(4.0 - 2.0 * std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("sampled Poisson and GUE levels reproduce the reference means") {
    std::vector<double> rp, rg;
    for (std::uint64_t s = 0; s < 20; ++s) {
        rp.push_back(gap_ratios(sorted_uniform(2000, s)).mean);
        rg.push_back(gap_ratios(bulk(gue_levels(400, 100 + s))).mean);
    }
    double mp = 0, mg = 0;
    for (double x : rp) mp += x / rp.size();
    for (double x : rg) mg += x / rg.size();
    CHECK(mp == doctest::Approx(2.0 * std::numbers::ln2 - 1.0).epsilon(0.02));
    CHECK(mg == doctest::Approx(0.5996).epsilon(0.01));
}

TEST_CASE("sff normalization and symmetries") {
    const VecD e = gue_levels(60, 2);
    const std::vector<double> times = {0.0, 0.1, 0.7, 3.0, 40.0};
    for (double beta : {0.0, 0.5, 3.0}) {
        const auto k = sff_single(e, beta, times);
        CHECK(k[0] == doctest::Approx(1.0));
        const VecD shifted = (e.array() + 123.4).matrix();
        const auto ks = sff_single(shifted, beta, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            CHECK(k[i] >= 0.0);
            CHECK(std::abs(ks[i] - k[i]) < 1e-12);
            CHECK(std::abs(sff_double_sum(e, beta, times[i]) - k[i]) < 1e-12);
        }
    }
    std::vector<double> neg;
    for (double t : times) neg.push_back(-t);
    const auto kp = sff_single(e, 0.0, times);
    const auto kn = sff_single(e, 0.0, neg);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(std::abs(kp[i] - kn[i]) < 1e-14);
    CHECK_THROWS_AS((void)sff({e}, 0.0, neg), InvalidArgument);
}

TEST_CASE("two-level sff") {
    VecD e(2);
    e << 0.0, 1.3;
    for (double t : {0.0, 0.4, 2.0, 9.0}) {
        // (1/4) * sum over (m, n) of cos((E_m - E_n) t)
        const double brute = 0.25 * (1 + 1 + 2 * std::cos(1.3 * t));
        CHECK(sff_single(e, 0.0, {t})[0] == doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("sff late-time average equals 1/D") {
    const VecD e = gue_levels(80, 7);
    const auto t = linear_grid(1e3, 1e5, 4000);
    const auto k = sff_single(e, 0.0, t);
    double m = 0;
    for (double x : k) m += x / k.size();
    CHECK(m == doctest::Approx(1.0 / 80).epsilon(0.1));
}

TEST_CASE("clusters") {
    const VecD flat = sorted_uniform(100, 3);
    CHECK(segment_clusters(flat).size() == 1);
    VecD two(40);
    for (Index i = 0; i < 20; ++i) {
        two(i) = 0.01 * static_cast<double>(i);
        two(20 + i) = 10.0 + 0.01 * static_cast<double>(i);
    }
    const auto cl = segment_clusters(two);
    REQUIRE(cl.size() == 2);
    CHECK(cl[0] == Range{0, 20});
    CHECK(cl[1] == Range{20, 40});
    CHECK(segment_clusters(two, 1e9).size() == 1);
}

TEST_CASE("dos histogram and Gaussian fit") {
    std::vector<VecD> spectra;
    for (std::uint64_t s = 0; s < 30; ++s) {
        Rng r(s);
        VecD e(400);
        for (Index i = 0; i < 400; ++i) e(i) = 2.0 + 0.5 * r.normal();
        spectra.push_back(e);
    }
    const DosResult d = dos(spectra, 60);
    double integral = 0;
    const double dx = d.histogram.x[1] - d.histogram.x[0];
    for (double y : d.histogram.y) integral += y * dx;
    CHECK(integral == doctest::Approx(1.0));
    CHECK(d.fit.mean == doctest::Approx(2.0).epsilon(0.02));
    CHECK(d.fit.sigma == doctest::Approx(0.5).epsilon(0.03));

    VecD same = VecD::Constant(10, 1.0);
    const DosResult one = dos({same}, 5, 0.0, 2.0);
    CHECK(std::count_if(one.histogram.y.begin(), one.histogram.y.end(), [](double y) { return y > 0; }) == 1);
    CHECK_THROWS_AS((void)dos({}, 10), InvalidArgument);
}

TEST_CASE("dos of large-omega YSYK shows M+1 peaks") {
    const auto space = build_space(8, 4, 1);
    ModelParams p;
    p.omega0 = 10.0;
    std::vector<VecD> spectra;
    for (std::uint64_t s = 0; s < 5; ++s) spectra.push_back(diagonalize(build_ysyk(space, p, sample_ysyk(8, 4, 1.0, s))).eigenvalues);
    const DosResult d = dos(spectra, 200);
    CHECK(local_maxima(d.histogram.y, 0.05).size() == 5);
}

TEST_CASE("plateau detector") {
    const auto t = linear_grid(0.0, 20.0, 201);
    std::vector<double> flat(t.size(), 0.2);
    PlateauOptions o;
    o.K_pl = 0.2;
    o.search_start = 3.0;
    const auto a = detect_plateau(t, flat, o);
    REQUIRE(a.has_value());
    CHECK(*a == doctest::Approx(3.1));

    std::vector<double> ramp(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) ramp[i] = 1e-3 * (1.0 + t[i]);
    CHECK_FALSE(detect_plateau(t, ramp, o).has_value());

    // approach from below: K = K_pl (1 - e^{-t})
    std::vector<double> rise(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) rise[i] = 0.2 * (1.0 - std::exp(-t[i]));
    o.search_start = 0.0;
    double last = 1e9;
    for (double delta : {0.01, 0.05, 0.1, 0.3}) {
        o.delta = delta;
        const auto r = detect_plateau(t, rise, o);
        REQUIRE(r.has_value());
        CHECK(*r <= last);
        CHECK(*r == doctest::Approx(-std::log(delta)).epsilon(0.05));
        last = *r;
    }
}

TEST_CASE("ramp detector and power-law fit") {
    const auto t = log_grid(1.0, 1e3, 300);
    std::vector<double> k(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) k[i] = 1e-4 * std::pow(t[i], 1.02);
    const PowerLaw pl = fit_power_law(t, k, 10.0, 500.0);
    CHECK(pl.exponent == doctest::Approx(1.02).epsilon(1e-10));
    CHECK(pl.A == doctest::Approx(1e-4).epsilon(1e-9));

    RampOptions o;
    o.lo = 16.0;
    o.hi = 1e3;
    const auto same = detect_ramp(t, k, pl, o);
    REQUIRE(same.has_value());
    CHECK(*same == doctest::Approx(t[std::lower_bound(t.begin(), t.end(), 16.0) - t.begin()]));

    std::vector<double> below(t.size(), 1e-6);
    CHECK_FALSE(detect_ramp(t, below, pl, o).has_value());

    // curve starting above the reference and joining it at t = 100
    std::vector<double> join(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) join[i] = pl(t[i]) * (1.0 + std::max(0.0, 0.5 * std::log(100.0 / t[i])));
    const auto j = detect_ramp(t, join, pl, o);
    REQUIRE(j.has_value());
    CHECK(*j == doctest::Approx(100.0).epsilon(0.02));
    double last = 1e9;
    for (double delta : {1e-3, 5e-3, 2e-2, 0.1}) {
        o.delta = delta;
        const auto r = detect_ramp(t, join, pl, o);
        REQUIRE(r.has_value());
        CHECK(*r <= last + 1e-12);
        last = *r;
    }
}

TEST_CASE("heisenberg time and grids") {
    VecD e(11);
    for (Index i = 0; i < 11; ++i) e(i) = 0.5 * static_cast<double>(i);
    CHECK(heisenberg_time(e) == doctest::Approx(2.0 * std::numbers::pi / 0.5));
    CHECK(heisenberg_time(e, Range{0, 3}) == doctest::Approx(2.0 * std::numbers::pi / 0.5));
    const auto g = log_grid(1e-2, 1e4, 7);
    CHECK(g.front() == doctest::Approx(1e-2));
    CHECK(g[1] == doctest::Approx(1e-1));
    CHECK(g.back() == doctest::Approx(1e4));
    CHECK_THROWS_AS((void)log_grid(0.0, 1.0, 5), InvalidArgument);
}

}  // TEST_SUITE
