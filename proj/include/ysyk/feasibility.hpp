// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file feasibility.hpp
 * @brief Order-of-magnitude calculator for a cavity-QED realization.
 *
 * Frequencies are angular (rad/s) throughout. A frequency quoted as
 * "x MHz" is nu = x * 1e6 Hz and is stored as 2 pi nu; report() echoes both.
 *
 * The speckle-dependent detuning Delta_da(r) is collapsed to its magnitude.
 * Two-tone cancellation of the static light shift and the mode-overlap
 * integrals of the light-matter derivation are not computed here.
 */

#pragma once

#include <string>
#include <vector>

namespace ysyk {

inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kAtomicMass = 1.66053906660e-27;  // kg
inline constexpr double kLithium6Mass = 6.0151228874 * kAtomicMass;

struct CavityParams {
    double Omega_d = 0.0;   // drive Rabi frequency
    double Omega_m = 0.0;   // single-photon Rabi frequency
    double Delta_da = 0.0;  // drive-atom detuning
    double Delta_cd = 0.0;  // cavity-drive detuning
    double kappa = 0.0;     // cavity linewidth
    double Gamma = 0.0;     // atomic linewidth
    double trap_freq = 0.0; // omega_trap
    double w0 = 0.0;        // cavity waist, m
    double m_at = kLithium6Mass;
};

// 2 pi * value * 1e6.
[[nodiscard]] double mhz(double value);

// Parses "<number> <unit>" with unit in {Hz, kHz, MHz, GHz} (converted to
// angular frequency), {m, mm, um, nm} (metres), {kg, u} (kilograms), or no unit.
[[nodiscard]] double parse_quantity(const std::string& text);

enum class Regime { ysyk, syk4 };

struct HierarchyCheck {
    std::string name;
    double ratio = 0.0;
    double required = 0.0;
    bool pass = false;
};

struct Hierarchy {
    std::vector<HierarchyCheck> checks;
    bool pass = false;
};

// |Delta_da| >> |Omega_d| >> |Omega_m|, plus |Delta_cd| >> |Omega_d Omega_m / Delta_da| for syk4.
[[nodiscard]] Hierarchy check_hierarchy(const CavityParams& p, Regime regime, double margin = 5.0);

struct Couplings {
    double yukawa_scale = 0.0;  // g / sqrt(2 omega0) ~ |Omega_d Omega_m / Delta_da|
    double J_lossless = 0.0;    // |Omega_d|^2 |Omega_m|^2 / (|Delta_da|^2 |Delta_cd|)
    double J = 0.0;             // with |Delta_cd + i kappa/2|
};

[[nodiscard]] Couplings effective_couplings(const CavityParams& p);

struct Dissipation {
    double Gamma_tilde = 0.0;       // Gamma |Omega_d|^2 / (Delta_da^2 + Gamma^2/4)
    double kappa_tilde = 0.0;       // kappa |Omega_d Omega_m|^2 / (Delta_da^2 (Delta_cd^2 + kappa^2/4))
    double kappa_tilde_local = 0.0; // with the 1/4 prefactor and the atomic Lorentzian
    double eta = 0.0;               // 4 |Omega_m|^2 / (kappa Gamma)
    double merit_ysyk = 0.0;        // yukawa_scale^2 / (kappa Gamma_tilde)
    double merit_syk4 = 0.0;        // J^2 / (kappa_tilde Gamma_tilde)
};

[[nodiscard]] Dissipation dissipation(const CavityParams& p);

struct Geometry {
    double x0 = 0.0;    // sqrt(hbar / (m omega_trap)), m
    double zeta = 0.0;  // sqrt(2) x0 / w0
    bool in_window = false;  // zeta in [0.65, 0.98]
};

[[nodiscard]] Geometry geometry(const CavityParams& p);
[[nodiscard]] double zeta_from_x0(double x0, double w0);

struct FeasibilityReport {
    CavityParams params;
    Hierarchy ysyk;
    Hierarchy syk4;
    Couplings couplings;
    Dissipation rates;
    Geometry geom;
};

[[nodiscard]] FeasibilityReport feasibility_report(const CavityParams& p, double margin = 5.0);

// JSON text; every frequency appears as "<key>" (rad/s) and "<key>_over_2pi_Hz".
[[nodiscard]] std::string report_json(const FeasibilityReport& r);
[[nodiscard]] std::string report_table(const FeasibilityReport& r);

}  // namespace ysyk
