// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ysyk {

// Fixed-order pairwise (cascade) summation; the result depends only on the
// order of `x`, not on threading or platform reduction order.
[[nodiscard]] double pairwise_sum(std::span<const double> x) noexcept;

struct MeanErr {
    double mean = 0.0;
    double err = 0.0;  // sample std / sqrt(n); 0 when n < 2
    std::size_t n = 0;
};

[[nodiscard]] MeanErr mean_stderr(std::span<const double> x);

// Pointwise mean and standard error over realizations.
// rows[r][t] is realization r at grid point t; all rows share a length.
struct CurveStats {
    std::vector<double> mean;
    std::vector<double> err;
    std::size_t n = 0;
};

[[nodiscard]] CurveStats curve_stats(const std::vector<std::vector<double>>& rows);

}  // namespace ysyk
