// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rescaling.hpp
 * @brief Short-time matching of YSYK to complex SYK_q: Hamiltonian moments,
 * time-rescaling factors and the large-omega0 constants C_SFF, C_OTOC.
 *
 * Every trace is normalized by Tr 1 over the half-filling sector.
 */

#pragma once

#include "ysyk/common.hpp"
#include "ysyk/hamiltonian.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ysyk {

struct MomentParams {
    int N = 8;
    int M = 4;
    int N_b = 1;
    double g = 1.0;
    double omega0 = 1.0;
    double J = 1.0;
};

// sigma_H^2 = Tr H^2 / Tr 1 - (Tr H / Tr 1)^2, computed from matrix entries.
[[nodiscard]] double sigma_h(const SpMat& h);
[[nodiscard]] double trace_moment1(const SpMat& h);  // Tr H / Tr 1
[[nodiscard]] double trace_moment2(const SpMat& h);  // Tr H^2 / Tr 1

enum class AnalyticModel { syk2, syk4, ysyk_small_omega, h_eff };

// Closed-form disorder averages; normalizations follow sample_sykq / sample_ysyk.
[[nodiscard]] double syk2_tr_h2(int N, double J);
[[nodiscard]] double syk2_tr_h_sq(int N, double J);
[[nodiscard]] double syk4_tr_h2(int N, double J);
[[nodiscard]] double syk4_tr_h_sq(int N, double J);
// Interaction part of YSYK; Tr H_int = 0.
[[nodiscard]] double ysyk_small_omega_tr_h2(int N, int N_b, double g, double omega0);
[[nodiscard]] double heff_tr_h2(int N, int M, double g, double omega0);
// Averaged (Tr H_eff / Tr 1)^2. `corrected` selects the exact Wick result
// N^3/(4(N-1)) for the non-super-extensive term in place of the published
// N^2(N(5N-8)+4)/(4(N-1)^2).
[[nodiscard]] double heff_tr_h_sq(int N, int M, double g, double omega0, bool corrected = false);

// Per-mode boson average Tr_B (a + a^dag)^2 / Tr_B 1 with cutoff N_b; equals N_b.
[[nodiscard]] double boson_quadrature_trace(int N_b);

[[nodiscard]] double sigma_h_analytic(AnalyticModel model, const MomentParams& p, bool corrected = false);

enum class AlphaKind { sff, otoc };

// g sqrt(N_b/(2 omega0) (N+2)/(N+1)) for sff, g sqrt(N_b/(2 omega0)) for otoc.
[[nodiscard]] double alpha_small_omega(AlphaKind kind, int N, int N_b, double g, double omega0);
// The simplified common factor g sqrt(N_b/(2 omega0)).
[[nodiscard]] double alpha_small_omega_simplified(int N_b, double g, double omega0);

// sigma_{H_eff} / sigma_{SYK4} with g = omega0 = J = 1.
[[nodiscard]] double c_sff_large_omega(int N, int M, bool corrected = false);

// sqrt(num / den) of the nested-commutator traces; 1 when num == den.
[[nodiscard]] double alpha_otoc_from_traces(double num, double den);

// Exact disorder average of Tr([[H_SYK4, A], B]^2) / Tr 1 for A = 2 n_i - 1,
// B = 2 n_j - 1 (no sampling: the trace is quadratic in the couplings).
[[nodiscard]] double syk4_nested_commutator_mean(int N, double J, int i = 0, int j = 1);

struct COtocOptions {
    double g = 1.0;
    int i = 0;
    int j = 1;
    bool drift_check = true;
    int drift_samples = 50;  // paired samples evaluated at 2 omega0
};

struct COtocResult {
    double value = 0.0;
    double err = 0.0;
    double numerator = 0.0;    // mean Tr([[H_band,A_b],B_b]^2)/Tr1
    double numerator_err = 0.0;
    double denominator = 0.0;  // exact SYK4 average
    std::size_t n_samples = 0;
    std::optional<double> drift;  // C(2 omega0) - C(omega0) on the paired subset
    double drift_err = 0.0;
    bool warning = false;
    std::string message;
};

// Monte-Carlo C_OTOC = alpha_OTOC / (g^2 / omega0^2) from the lowest
// C(N, N/2) levels of YSYK at omega0 (the zero-boson band).
[[nodiscard]] COtocResult c_otoc_large_omega(int N, int M, double omega0, std::size_t n_samples,
                                             std::uint64_t seed, const COtocOptions& opt = {});

// Band numerator for one coupling realization.
[[nodiscard]] double band_nested_commutator(const YsykCouplings& c, double omega0, int i = 0, int j = 1);

struct MomentRow {
    std::string name;
    double analytic = 0.0;
    double numeric = 0.0;
    double err = 0.0;
    double z = 0.0;
};

struct MomentReport {
    std::vector<MomentRow> rows;
    std::size_t n_samples = 0;
    [[nodiscard]] const MomentRow& at(const std::string& name) const;
};

// Monte-Carlo audit of every closed-form moment above.
[[nodiscard]] MomentReport moment_audit(const MomentParams& p, std::size_t n_samples, std::uint64_t seed);

struct RescaleFactors {
    double alpha_sff = 0.0;
    double alpha_otoc = 0.0;
    std::string regime;  // "small_omega" or "large_omega"
    std::optional<double> c_sff;
    std::optional<double> c_otoc;
    MomentParams params;
};

// Small-omega factors from the closed forms; large-omega factors from
// C_SFF and, when supplied, a C_OTOC estimate.
[[nodiscard]] RescaleFactors rescale_factors(const MomentParams& p, bool large_omega,
                                             std::optional<double> c_otoc = {});

}  // namespace ysyk
