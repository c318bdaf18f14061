// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/stats.hpp"

#include "ysyk/common.hpp"

#include <algorithm>
#include <cmath>

namespace ysyk {

double binomial(int n, int k) noexcept {
    if (k < 0 || n < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

std::uint64_t binomial_u64(int n, int k) noexcept {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

double pairwise_sum(std::span<const double> x) noexcept {
    constexpr std::size_t kLeaf = 16;
    if (x.size() <= kLeaf) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

MeanErr mean_stderr(std::span<const double> x) {
    MeanErr r;
    r.n = x.size();
    if (x.empty()) return r;
    r.mean = pairwise_sum(x) / static_cast<double>(x.size());
    if (x.size() < 2) return r;
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dev[i] = (x[i] - r.mean) * (x[i] - r.mean);
    const double var = pairwise_sum(dev) / static_cast<double>(x.size() - 1);
    r.err = std::sqrt(var / static_cast<double>(x.size()));
    return r;
}

CurveStats curve_stats(const std::vector<std::vector<double>>& rows) {
    CurveStats out;
    out.n = rows.size();
    if (rows.empty()) return out;
    const std::size_t len = rows.front().size();
    out.mean.resize(len);
    out.err.resize(len);
    std::vector<double> column(rows.size());
    for (std::size_t t = 0; t < len; ++t) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != len) throw InvalidArgument("curve_stats: ragged rows");
            column[r] = rows[r][t];
        }
        const MeanErr m = mean_stderr(column);
        out.mean[t] = m.mean;
        out.err[t] = m.err;
    }
    return out;
}

}  // namespace ysyk
