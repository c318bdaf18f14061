// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/rescaling.hpp"

#include "ysyk/disorder.hpp"
#include "ysyk/linalg.hpp"
#include "ysyk/otoc.hpp"
#include "ysyk/rng.hpp"
#include "ysyk/stats.hpp"

#include <cmath>

namespace ysyk {

double trace_moment1(const SpMat& h) {
    double s = 0.0;
    for (Index r = 0; r < h.outerSize(); ++r) s += h.coeff(r, r).real();
    return s / static_cast<double>(h.rows());
}

double trace_moment2(const SpMat& h) {
    double s = 0.0;
    for (Index r = 0; r < h.outerSize(); ++r)
        for (SpMat::InnerIterator it(h, r); it; ++it) s += std::norm(it.value());
    return s / static_cast<double>(h.rows());
}

double sigma_h(const SpMat& h) {
    // Centre the diagonal first so a large constant shift does not cancel catastrophically.
    const double m1 = trace_moment1(h);
    double s = 0.0;
    for (Index r = 0; r < h.outerSize(); ++r)
        for (SpMat::InnerIterator it(h, r); it; ++it) {
            const cplx v = it.row() == it.col() ? it.value() - m1 : it.value();
            s += std::norm(v);
        }
    return std::sqrt(s / static_cast<double>(h.rows()));
}

namespace {

double ratio_sq(int a_n, int a_k, int b_n, int b_k) {
    const double r = binomial(a_n, a_k) / binomial(b_n, b_k);
    return r * r;
}

void check_half(int N) {
    if (N < 4 || N % 2 != 0) throw InvalidArgument("moment formulas need even N >= 4 at half filling");
}

}  // namespace

double syk2_tr_h2(int N, double J) {
    check_half(N);
    return 2.0 * J * J / N * binomial(N / 2 + 1, 2);
}

double syk2_tr_h_sq(int N, double J) {
    check_half(N);
    return J * J * ratio_sq(N - 1, N / 2, N, N / 2);
}

double syk4_tr_h2(int N, double J) {
    check_half(N);
    return 12.0 * J * J / std::pow(N, 3) * binomial(N / 2 + 2, 4);
}

double syk4_tr_h_sq(int N, double J) {
    check_half(N);
    return 2.0 * J * J / std::pow(N, 3) * binomial(N, 2) * ratio_sq(N - 2, N / 2, N, N / 2);
}

double ysyk_small_omega_tr_h2(int N, int N_b, double g, double omega0) {
    check_half(N);
    return g * g * N_b / (omega0 * N) * binomial(N / 2 + 1, 2);
}

double heff_tr_h2(int N, int M, double g, double omega0) {
    check_half(N);
    const double c = binomial(N / 2 + 1, 2);
    const double pref = std::pow(g, 4) / (4.0 * std::pow(omega0, 4) * M * N * N);
    return pref * (4.0 * (M + 2) * c * c - (N + 1) * (N / 2.0) * (N / 2.0));
}

double heff_tr_h_sq(int N, int M, double g, double omega0, bool corrected) {
    check_half(N);
    const double c = binomial(N / 2 + 1, 2);
    const double pref = std::pow(g, 4) / (4.0 * std::pow(omega0, 4) * M * N * N);
    const double n = N;
    const double tail = corrected ? n * n * n / (4.0 * (n - 1.0))
                                  : n * n * (n * (5.0 * n - 8.0) + 4.0) / (4.0 * (n - 1.0) * (n - 1.0));
    return pref * (4.0 * M * c * c + tail);
}

double boson_quadrature_trace(int N_b) {
    if (N_b < 1) throw InvalidArgument("N_b must be >= 1");
    // <n|(a+a^dag)^2|n> = 2n + 1 below the cutoff; the top level has no n+1 partner and gives N_b.
    double s = 0.0;
    for (int n = 0; n < N_b; ++n) s += 2.0 * n + 1.0;
    s += N_b;
    return s / (N_b + 1.0);
}

double sigma_h_analytic(AnalyticModel model, const MomentParams& p, bool corrected) {
    double v = 0.0;
    switch (model) {
        case AnalyticModel::syk2: v = syk2_tr_h2(p.N, p.J) - syk2_tr_h_sq(p.N, p.J); break;
        case AnalyticModel::syk4: v = syk4_tr_h2(p.N, p.J) - syk4_tr_h_sq(p.N, p.J); break;
        case AnalyticModel::ysyk_small_omega: v = ysyk_small_omega_tr_h2(p.N, p.N_b, p.g, p.omega0); break;
        case AnalyticModel::h_eff:
            v = heff_tr_h2(p.N, p.M, p.g, p.omega0) - heff_tr_h_sq(p.N, p.M, p.g, p.omega0, corrected);
            break;
    }
    return std::sqrt(v);
}

double alpha_small_omega(AlphaKind kind, int N, int N_b, double g, double omega0) {
    if (!(omega0 > 0)) throw InvalidArgument("omega0 must be > 0");
    const double base = N_b / (2.0 * omega0);
    if (kind == AlphaKind::otoc) return g * std::sqrt(base);
    return g * std::sqrt(base * (N + 2.0) / (N + 1.0));
}

double alpha_small_omega_simplified(int N_b, double g, double omega0) {
    return alpha_small_omega(AlphaKind::otoc, 0, N_b, g, omega0);
}

double c_sff_large_omega(int N, int M, bool corrected) {
    if (M < 1) throw InvalidArgument("C_SFF needs M >= 1");
    MomentParams p;
    p.N = N;
    p.M = M;
    p.g = 1.0;
    p.omega0 = 1.0;
    p.J = 1.0;
    return sigma_h_analytic(AnalyticModel::h_eff, p, corrected) / sigma_h_analytic(AnalyticModel::syk4, p);
}

double alpha_otoc_from_traces(double num, double den) {
    if (!(den > 0) || num < 0) throw InvalidArgument("nested-commutator traces must be positive");
    return std::sqrt(num / den);
}

double syk4_nested_commutator_mean(int N, double J, int i, int j) {
    check_half(N);
    const FermionBasis basis(N, N / 2);
    const auto sets = index_sets(N, 2);
    const double var = sykq_variance(N, 4, J);
    double s = 0.0;
    for (std::size_t y = 0; y < basis.size(); ++y) {
        const Word wy = basis[y];
        const double ay = 2.0 * number_op_diag(wy, i) - 1.0, by = 2.0 * number_op_diag(wy, j) - 1.0;
        for (std::size_t a = 0; a < sets.size(); ++a)
            for (std::size_t b = 0; b < sets.size(); ++b) {
                if (a == b) continue;
                auto r = apply_string(wy, sets[a], sets[b]);
                if (!r) continue;
                const double ax = 2.0 * number_op_diag(r->word, i) - 1.0;
                const double bx = 2.0 * number_op_diag(r->word, j) - 1.0;
                const double w = (ay - ax) * (by - bx);
                s += var * w * w;
            }
    }
    return s / static_cast<double>(basis.size());
}

double band_nested_commutator(const YsykCouplings& c, double omega0, int i, int j) {
    const HilbertSpace space = build_space(c.N, c.M, 1);
    ModelParams mp;
    mp.omega0 = omega0;
    mp.g = c.g;
    SparseHamiltonian h = build_ysyk(space, mp, c);
    // Remove the zero-point constant exactly so the band sits at O(g^2/omega0^2).
    const double shift = 0.5 * omega0 * c.M;
    for (Index r = 0; r < h.matrix.rows(); ++r) h.matrix.coeffRef(r, r) -= shift;

    const int k = static_cast<int>(space.fermion_dim);
    LowestOptions lo;
    lo.tol = 1e-12;
    lo.seed = c.seed;
    const EigenPairs band = lowest_k(h.matrix, k, lo);
    const MatC& Q = band.vectors;
    const MatC hb = Q.adjoint() * (h.matrix * Q);
    const VecD a = occupation_sign_diag(space, i), b = occupation_sign_diag(space, j);
    const MatC ab = Q.adjoint() * a.cast<cplx>().asDiagonal() * Q;
    const MatC bb = Q.adjoint() * b.cast<cplx>().asDiagonal() * Q;
    const MatC hh = (hb + hb.adjoint()) * 0.5;
    return nested_commutator_trace(hh, ab, bb) / k;
}

COtocResult c_otoc_large_omega(int N, int M, double omega0, std::size_t n_samples, std::uint64_t seed,
                               const COtocOptions& opt) {
    if (n_samples < 2) throw InvalidArgument("C_OTOC needs at least 2 samples");
    COtocResult res;
    res.denominator = syk4_nested_commutator_mean(N, 1.0, opt.i, opt.j);
    const double s4 = std::pow(omega0, 4) / std::pow(opt.g, 4);
    std::vector<double> num(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const YsykCouplings c = sample_ysyk(N, M, opt.g, hash64(seed, s));
        num[s] = band_nested_commutator(c, omega0, opt.i, opt.j) * s4;
    }
    const MeanErr me = mean_stderr(num);
    res.n_samples = n_samples;
    res.numerator = me.mean / s4;
    res.numerator_err = me.err / s4;
    res.value = std::sqrt(me.mean / res.denominator);
    res.err = res.value * me.err / (2.0 * me.mean);

    if (opt.drift_check) {
        const std::size_t nd = std::min<std::size_t>(n_samples, static_cast<std::size_t>(std::max(2, opt.drift_samples)));
        const double s4b = std::pow(2.0 * omega0, 4) / std::pow(opt.g, 4);
        std::vector<double> base(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(nd)), diff(nd);
        for (std::size_t s = 0; s < nd; ++s) {
            const YsykCouplings c = sample_ysyk(N, M, opt.g, hash64(seed, s));
            diff[s] = band_nested_commutator(c, 2.0 * omega0, opt.i, opt.j) * s4b - base[s];
        }
        const MeanErr mb = mean_stderr(base), md = mean_stderr(diff);
        const double c1 = std::sqrt(mb.mean / res.denominator);
        const double dc = c1 * md.mean / (2.0 * mb.mean);
        res.drift = dc;
        res.drift_err = c1 * md.err / (2.0 * mb.mean);
        if (std::abs(dc) > 3.0 * res.err) {
            res.warning = true;
            res.message = "C_OTOC still depends on omega0: shift " + std::to_string(dc) + " at 2 omega0 exceeds 3 stderr";
        }
    }
    return res;
}

const MomentRow& MomentReport::at(const std::string& name) const {
    for (const auto& r : rows)
        if (r.name == name) return r;
    throw InvalidArgument("no moment row named " + name);
}

MomentReport moment_audit(const MomentParams& p, std::size_t n_samples, std::uint64_t seed) {
    check_half(p.N);
    if (n_samples < 2) throw InvalidArgument("moment_audit needs at least 2 samples");
    const std::size_t S = n_samples;
    std::vector<double> s2_m2(S), s2_m1(S), s2_var(S), s4_m2(S), s4_m1(S), s4_var(S), y_m2(S), e_m2(S), e_m1(S),
        e_var(S);
    const HilbertSpace fs = build_space(p.N, 0, 1);
    const HilbertSpace ys = build_space(p.N, p.M, p.N_b);
    ModelParams mp;
    mp.omega0 = p.omega0;
    mp.g = p.g;
    for (std::size_t s = 0; s < S; ++s) {
        const std::uint64_t base = hash64(seed, s);
        {
            const auto h = build_sykq(fs, sample_sykq(p.N, 2, p.J, hash64(base, 2))).matrix;
            const double m1 = trace_moment1(h), m2 = trace_moment2(h);
            s2_m2[s] = m2;
            s2_m1[s] = m1 * m1;
            s2_var[s] = m2 - m1 * m1;
        }
        {
            const auto h = build_sykq(fs, sample_sykq(p.N, 4, p.J, hash64(base, 4))).matrix;
            const double m1 = trace_moment1(h), m2 = trace_moment2(h);
            s4_m2[s] = m2;
            s4_m1[s] = m1 * m1;
            s4_var[s] = m2 - m1 * m1;
        }
        const YsykCouplings c = sample_ysyk(p.N, p.M, p.g, hash64(base, 1));
        {
            // Interaction part only: every interaction entry changes a boson occupation.
            const auto h = build_ysyk(ys, mp, c).matrix;
            double off = 0.0;
            for (Index r = 0; r < h.outerSize(); ++r)
                for (SpMat::InnerIterator it(h, r); it; ++it)
                    if (it.row() != it.col()) off += std::norm(it.value());
            y_m2[s] = off / static_cast<double>(h.rows());
        }
        {
            const auto h = build_sw_effective(fs, c, p.omega0).matrix;
            const double m1 = trace_moment1(h), m2 = trace_moment2(h);
            e_m2[s] = m2;
            e_m1[s] = m1 * m1;
            e_var[s] = m2 - m1 * m1;
        }
    }
    MomentReport rep;
    rep.n_samples = S;
    auto add = [&](const std::string& name, double analytic, const std::vector<double>& v) {
        const MeanErr me = mean_stderr(v);
        MomentRow r;
        r.name = name;
        r.analytic = analytic;
        r.numeric = me.mean;
        r.err = me.err;
        r.z = me.err > 0 ? (me.mean - analytic) / me.err : (me.mean == analytic ? 0.0 : INFINITY);
        rep.rows.push_back(r);
    };
    add("syk2_tr_h2", syk2_tr_h2(p.N, p.J), s2_m2);
    add("syk2_tr_h_sq", syk2_tr_h_sq(p.N, p.J), s2_m1);
    add("syk2_sigma2", syk2_tr_h2(p.N, p.J) - syk2_tr_h_sq(p.N, p.J), s2_var);
    add("ysyk_small_omega_sigma2", ysyk_small_omega_tr_h2(p.N, p.N_b, p.g, p.omega0), y_m2);
    add("syk4_tr_h2", syk4_tr_h2(p.N, p.J), s4_m2);
    add("syk4_tr_h_sq", syk4_tr_h_sq(p.N, p.J), s4_m1);
    add("heff_tr_h2", heff_tr_h2(p.N, p.M, p.g, p.omega0), e_m2);
    add("heff_tr_h_sq", heff_tr_h_sq(p.N, p.M, p.g, p.omega0, false), e_m1);
    add("heff_tr_h_sq_corrected", heff_tr_h_sq(p.N, p.M, p.g, p.omega0, true), e_m1);
    return rep;
}

RescaleFactors rescale_factors(const MomentParams& p, bool large_omega, std::optional<double> c_otoc) {
    RescaleFactors f;
    f.params = p;
    if (!large_omega) {
        f.regime = "small_omega";
        f.alpha_sff = alpha_small_omega(AlphaKind::sff, p.N, p.N_b, p.g, p.omega0);
        f.alpha_otoc = alpha_small_omega(AlphaKind::otoc, p.N, p.N_b, p.g, p.omega0);
        return f;
    }
    f.regime = "large_omega";
    const double s = p.g * p.g / (p.omega0 * p.omega0);
    f.c_sff = c_sff_large_omega(p.N, p.M);
    f.alpha_sff = *f.c_sff * s;
    if (c_otoc) {
        f.c_otoc = c_otoc;
        f.alpha_otoc = *c_otoc * s;
    }
    return f;
}

}  // namespace ysyk
