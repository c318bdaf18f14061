// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectral.hpp
 * @brief Diagonalization and spectral chaos markers.
 */

#pragma once

#include "ysyk/common.hpp"
#include "ysyk/hamiltonian.hpp"
#include "ysyk/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ysyk {

using Range = std::pair<Index, Index>;  // [begin, end)

struct Spectrum {
    VecD eigenvalues;      // ascending
    MatC eigenvectors;     // columns, empty unless requested
    std::string model;
    std::vector<Range> clusters;

    [[nodiscard]] Index size() const noexcept { return eigenvalues.size(); }
    [[nodiscard]] bool has_vectors() const noexcept { return eigenvectors.cols() > 0; }
};

enum class DiagMode { full, lowest_k };

struct DiagOptions {
    DiagMode mode = DiagMode::full;
    int k = 0;                 // lowest_k only
    bool vectors = false;
    Index dense_budget = 4096; // largest D accepted in full mode
    LowestOptions iterative;
};

[[nodiscard]] Spectrum diagonalize(const SparseHamiltonian& h, const DiagOptions& opt = {});

// Grid-valued diagnostic with optional standard errors and per-point counts.
struct DiagnosticCurve {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> err;
    std::vector<std::size_t> count;
};

struct GaussianFit {
    double amplitude = 0.0;
    double mean = 0.0;
    double sigma = 0.0;
    double residual_l2 = 0.0;  // sqrt(sum (h - fit)^2 dx)
};

struct DosResult {
    DiagnosticCurve histogram;  // bin centres, density (integrates to 1)
    GaussianFit fit;
};

// Pooled, normalized histogram over all spectra. lo/hi default to the pooled range.
[[nodiscard]] DosResult dos(const std::vector<VecD>& spectra, int bins, std::optional<double> lo = {},
                            std::optional<double> hi = {});

// Least-squares fit of a exp(-(x-m)^2/(2 s^2)) by Levenberg-Marquardt.
[[nodiscard]] GaussianFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y);

// Strict local maxima (plateaus of equal values count once) above
// min_fraction * max(y).
[[nodiscard]] std::vector<std::size_t> local_maxima(const std::vector<double>& y, double min_fraction = 0.0);

struct GapRatioStats {
    std::vector<double> ratios;
    DiagnosticCurve histogram;  // density over [0,1]
    double mean = 0.0;
    std::size_t skipped = 0;    // pairs with both spacings zero
};

// r_n = min(s_n, s_{n-1}) / max(s_n, s_{n-1}). Spacings below
// degeneracy_tol * max|E| count as exact zeros.
[[nodiscard]] GapRatioStats gap_ratios(const VecD& eigenvalues, int bins = 50, double degeneracy_tol = 1e-14);

enum class GapClass { poisson, goe, gue, gse };

// Folded density on [0,1]: Poisson 2/(1+r)^2, Wigner-Dyson surmise otherwise.
[[nodiscard]] double reference_gap_density(GapClass cls, double r);
[[nodiscard]] double reference_gap_mean(GapClass cls);

struct SffCurve {
    std::vector<double> times;
    std::vector<double> K;
    std::vector<double> err;
    double beta = 0.0;
    std::size_t n_realizations = 0;
};

// |Z(beta+it)|^2 / Z(beta)^2 for one spectrum, energies shifted by their minimum.
[[nodiscard]] std::vector<double> sff_single(const VecD& e, double beta, const std::vector<double>& times);

// The same quantity from the O(D^2) double sum over level pairs.
[[nodiscard]] double sff_double_sum(const VecD& e, double beta, double t);

// Quenched average over realizations.
[[nodiscard]] SffCurve sff(const std::vector<VecD>& spectra, double beta, const std::vector<double>& times);

// Splits at consecutive gaps larger than threshold * median gap.
[[nodiscard]] std::vector<Range> segment_clusters(const VecD& e, double threshold = 200.0);

struct PlateauOptions {
    double K_pl = 0.0;
    double delta = 0.1;
    double window = 1.9;        // same units as the time axis
    double search_start = 0.0;  // exclusive lower bound on t
};

// Earliest left edge t0 > search_start such that every grid point in
// [t0, t0 + window] satisfies |K - K_pl| / K_pl < delta.
[[nodiscard]] std::optional<double> detect_plateau(const std::vector<double>& t, const std::vector<double>& K,
                                                   const PlateauOptions& opt);

struct PowerLaw {
    double A = 0.0;
    double exponent = 0.0;

    [[nodiscard]] double operator()(double t) const;
};

// Ordinary least squares of log K on log t over t in [lo, hi].
[[nodiscard]] PowerLaw fit_power_law(const std::vector<double>& t, const std::vector<double>& K, double lo,
                                     double hi);

struct RampOptions {
    double delta = 5e-3;
    double lo = 0.0;
    double hi = 0.0;
    // Also accept a sign change of K - K_ref between neighbouring grid
    // points; the onset is then the linearly interpolated crossing.
    bool interpolate_crossings = true;
};

[[nodiscard]] std::optional<double> detect_ramp(const std::vector<double>& t, const std::vector<double>& K,
                                                const PowerLaw& ref, const RampOptions& opt);

// 2 pi / mean level spacing within e[range].
[[nodiscard]] double heisenberg_time(const VecD& e, std::optional<Range> range = {});

[[nodiscard]] std::vector<double> log_grid(double t0, double t1, std::size_t n);
[[nodiscard]] std::vector<double> linear_grid(double t0, double t1, std::size_t n);

}  // namespace ysyk
