// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file otoc.hpp
 * @brief Out-of-time-ordered correlators F(t) = Re Tr(rho A(t) B A(t) B) with
 * A = 2 n_i - 1, B = 2 n_j - 1, and the tools used to read them.
 *
 * A(t) = e^{iHt} A e^{-iHt}. All dense routines work in the eigenbasis of H,
 * so one decomposition serves every time point.
 */

#pragma once

#include "ysyk/common.hpp"
#include "ysyk/hilbert.hpp"
#include "ysyk/spectral.hpp"

#include <vector>

namespace ysyk {

struct OtocCurve {
    std::vector<double> times;
    std::vector<double> F;
    std::vector<double> C;    // 2 - 2F
    std::vector<double> err;  // stderr of F over realizations (or random vectors)
    double beta = 0.0;
    int mode_i = 0;
    int mode_j = 1;
    std::size_t n_realizations = 1;
};

enum class TraceMethod { exact, stochastic };

struct OtocOptions {
    double beta = 0.0;
    TraceMethod trace = TraceMethod::exact;
    int n_vectors = 1;        // stochastic only
    std::uint64_t seed = 0;   // stochastic only
    Index dense_budget = 4096;
};

// Full-space OTOC. `spec` must carry all eigenvectors of H on `space`.
[[nodiscard]] OtocCurve otoc_full(const HilbertSpace& space, const Spectrum& spec, int i, int j,
                                  const std::vector<double>& times, const OtocOptions& opt = {});

// Diagonalizes h first; throws InvalidArgument above the dense budget
// (use otoc_restricted there).
[[nodiscard]] OtocCurve otoc_full(const HilbertSpace& space, const SparseHamiltonian& h, int i, int j,
                                  const std::vector<double>& times, const OtocOptions& opt = {});

// Reference path: U(t) = exp(iHt) from a dense matrix exponential per time point.
[[nodiscard]] OtocCurve otoc_exponentiation(const HilbertSpace& space, const SparseHamiltonian& h, int i, int j,
                                            const std::vector<double>& times, double beta = 0.0);

// Cluster-restricted OTOC in the Lehmann representation:
// C(t) = Tr(rho_c X^dag X), X = [A_c(t), B_c], with A_c, B_c the operators
// projected on the cluster eigenvectors; F = 1 - C/2.
[[nodiscard]] OtocCurve otoc_restricted(const HilbertSpace& space, const Spectrum& spec, Range cluster, int i,
                                        int j, const std::vector<double>& times, double beta = 0.0);

struct FilteredOtoc {
    std::vector<double> times;
    std::vector<double> original;
    std::vector<double> decay;
    std::vector<double> residual;  // original - decay
    int window = 0;
    int order = 0;
};

// Savitzky-Golay low-pass on a uniform grid. The first and last window/2
// points use the polynomial fitted to the first/last full window.
[[nodiscard]] std::vector<double> savitzky_golay(const std::vector<double>& y, int window, int order);

[[nodiscard]] FilteredOtoc filter_micromotion(const std::vector<double>& t, const std::vector<double>& F,
                                              int window, int order = 3);

// Odd window covering `periods` oscillation periods on a grid with spacing dt.
[[nodiscard]] int filter_window_for_period(double period, double dt, double periods = 4.0);

// Mean spacing between upward zero crossings (linearly interpolated) in [lo, hi].
[[nodiscard]] double oscillation_period(const std::vector<double>& t, const std::vector<double>& y, double lo,
                                        double hi);

// sqrt(2) * rms over [lo, hi]; the amplitude of a pure sinusoid.
[[nodiscard]] double oscillation_amplitude(const std::vector<double>& t, const std::vector<double>& y, double lo,
                                           double hi);

struct ScaledCurve {
    std::vector<double> x;
    std::vector<double> y;
};

// x = time_scale * t, y = amp_scale * v.
[[nodiscard]] ScaledCurve rescale_curve(const std::vector<double>& t, const std::vector<double>& v,
                                        double time_scale, double amp_scale = 1.0);

// Max over curve pairs of the L-infinity distance on [lo, hi], after linear
// interpolation onto n_grid points (log-spaced when log_axis).
[[nodiscard]] double collapse_check(const std::vector<ScaledCurve>& curves, double lo, double hi,
                                    std::size_t n_grid = 200, bool log_axis = true);

// Linear interpolation of (x, y) at q; x ascending, q inside the range.
[[nodiscard]] double interpolate(const std::vector<double>& x, const std::vector<double>& y, double q);

// Tr([[H,A],B]^2) for A, B diagonal in the basis of h.
[[nodiscard]] double nested_commutator_trace(const SpMat& h, const VecD& a, const VecD& b);

// Same for dense operators.
[[nodiscard]] double nested_commutator_trace(const MatC& h, const MatC& a, const MatC& b);

// Mean of v over t >= t.back() / 10.
[[nodiscard]] double late_time_mean(const std::vector<double>& t, const std::vector<double>& v);

}  // namespace ysyk
