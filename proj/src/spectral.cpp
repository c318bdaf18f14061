// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/spectral.hpp"

#include "ysyk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ysyk {

Spectrum diagonalize(const SparseHamiltonian& h, const DiagOptions& opt) {
    Spectrum s;
    s.model = h.model;
    if (opt.mode == DiagMode::full) {
        if (h.dim() > opt.dense_budget)
            throw InvalidArgument("dimension " + std::to_string(h.dim()) + " exceeds the dense budget " +
                                  std::to_string(opt.dense_budget) + "; use lowest_k");
        EigenPairs ep = eigh(h.dense(), opt.vectors);
        s.eigenvalues = std::move(ep.values);
        s.eigenvectors = std::move(ep.vectors);
    } else {
        EigenPairs ep = lowest_k(h.matrix, opt.k, opt.iterative);
        s.eigenvalues = std::move(ep.values);
        if (opt.vectors) s.eigenvectors = std::move(ep.vectors);
    }
    return s;
}

GaussianFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 3 || y.size() != n) throw InvalidArgument("fit_gaussian needs >= 3 points");
    double w = 0, m1 = 0, m2 = 0, ymax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        w += y[i];
        m1 += y[i] * x[i];
        ymax = std::max(ymax, y[i]);
    }
    GaussianFit f;
    if (w <= 0) return f;
    m1 /= w;
    for (std::size_t i = 0; i < n; ++i) m2 += y[i] * (x[i] - m1) * (x[i] - m1);
    double p[3] = {ymax, m1, std::sqrt(std::max(m2 / w, 1e-300))};
    if (p[2] == 0.0) p[2] = (x.back() - x.front()) / static_cast<double>(n);

    auto cost = [&](const double* q) {
        double c = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = (x[i] - q[1]) / q[2];
            const double r = y[i] - q[0] * std::exp(-0.5 * z * z);
            c += r * r;
        }
        return c;
    };
    double lambda = 1e-3;
    double c = cost(p);
    for (int it = 0; it < 200; ++it) {
        Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
        Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < n; ++i) {
            const double z = (x[i] - p[1]) / p[2];
            const double e = std::exp(-0.5 * z * z);
            const Eigen::Vector3d g(e, p[0] * e * z / p[2], p[0] * e * z * z / p[2]);
            jtj += g * g.transpose();
            jtr += g * (y[i] - p[0] * e);
        }
        Eigen::Matrix3d a = jtj;
        for (int d = 0; d < 3; ++d) a(d, d) *= 1.0 + lambda;
        const Eigen::Vector3d step = a.ldlt().solve(jtr);
        double q[3] = {p[0] + step(0), p[1] + step(1), std::abs(p[2] + step(2))};
        const double cq = cost(q);
        if (cq < c) {
            const bool done = (c - cq) < 1e-14 * c;
            std::copy(q, q + 3, p);
            c = cq;
            lambda *= 0.3;
            if (done) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }
    f.amplitude = p[0];
    f.mean = p[1];
    f.sigma = p[2];
    const double dx = n > 1 ? (x.back() - x.front()) / static_cast<double>(n - 1) : 1.0;
    f.residual_l2 = std::sqrt(c * dx);
    return f;
}

DosResult dos(const std::vector<VecD>& spectra, int bins, std::optional<double> lo, std::optional<double> hi) {
    if (spectra.empty()) throw InvalidArgument("dos: no spectra");
    if (bins < 1) throw InvalidArgument("dos: bins must be >= 1");
    double a = std::numeric_limits<double>::infinity(), b = -a;
    std::size_t total = 0;
    for (const auto& s : spectra) {
        if (s.size() == 0) throw InvalidArgument("dos: empty spectrum");
        a = std::min(a, s.minCoeff());
        b = std::max(b, s.maxCoeff());
        total += static_cast<std::size_t>(s.size());
    }
    if (lo) a = *lo;
    if (hi) b = *hi;
    if (b <= a) {
        // Degenerate range: one bin of unit width around the level.
        a -= 0.5;
        b += 0.5;
    }
    const double width = (b - a) / bins;
    DosResult r;
    r.histogram.x.resize(bins);
    r.histogram.y.assign(bins, 0.0);
    r.histogram.count.assign(bins, 0);
    for (int i = 0; i < bins; ++i) r.histogram.x[i] = a + (i + 0.5) * width;
    for (const auto& s : spectra)
        for (Index n = 0; n < s.size(); ++n) {
            const double v = s(n);
            if (v < a || v > b) continue;
            const int k = std::min(bins - 1, static_cast<int>((v - a) / width));
            r.histogram.count[k]++;
        }
    for (int i = 0; i < bins; ++i)
        r.histogram.y[i] = static_cast<double>(r.histogram.count[i]) / (static_cast<double>(total) * width);
    if (bins >= 3) r.fit = fit_gaussian(r.histogram.x, r.histogram.y);
    return r;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& y, double min_fraction) {
    std::vector<std::size_t> out;
    if (y.empty()) return out;
    const double floor = min_fraction * *std::max_element(y.begin(), y.end());
    std::size_t i = 0;
    const std::size_t n = y.size();
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && y[j + 1] == y[i]) ++j;
        const bool left = i == 0 || y[i - 1] < y[i];
        const bool right = j + 1 == n || y[j + 1] < y[i];
        if (left && right && y[i] > floor && !(i == 0 && j + 1 == n)) out.push_back((i + j) / 2);
        i = j + 1;
    }
    return out;
}

GapRatioStats gap_ratios(const VecD& e, int bins, double degeneracy_tol) {
    const Index n = e.size();
    if (n < 3) throw InvalidArgument("gap_ratios needs at least 3 levels");
    const double scale = e.cwiseAbs().maxCoeff();
    const double zero = degeneracy_tol * scale;
    GapRatioStats st;
    st.ratios.reserve(n - 2);
    for (Index k = 1; k + 1 < n; ++k) {
        double s0 = e(k) - e(k - 1);
        double s1 = e(k + 1) - e(k);
        if (s0 <= zero) s0 = 0.0;
        if (s1 <= zero) s1 = 0.0;
        if (s0 == 0.0 && s1 == 0.0) {
            ++st.skipped;
            continue;
        }
        st.ratios.push_back(std::min(s0, s1) / std::max(s0, s1));
    }
    if (st.ratios.empty()) throw InvalidArgument("gap ratios undefined: spectrum is fully degenerate");
    st.mean = pairwise_sum(st.ratios) / static_cast<double>(st.ratios.size());
    st.histogram.x.resize(bins);
    st.histogram.y.assign(bins, 0.0);
    st.histogram.count.assign(bins, 0);
    for (int i = 0; i < bins; ++i) st.histogram.x[i] = (i + 0.5) / bins;
    for (double r : st.ratios) st.histogram.count[std::min(bins - 1, static_cast<int>(r * bins))]++;
    for (int i = 0; i < bins; ++i)
        st.histogram.y[i] = static_cast<double>(st.histogram.count[i]) * bins / static_cast<double>(st.ratios.size());
    return st;
}

double reference_gap_density(GapClass cls, double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("gap ratio density defined on [0, 1]");
    if (cls == GapClass::poisson) return 2.0 / ((1.0 + r) * (1.0 + r));
    const double sqrt3 = std::sqrt(3.0);
    double beta = 0, z = 0;
    switch (cls) {
        case GapClass::goe: beta = 1; z = 8.0 / 27.0; break;
        case GapClass::gue: beta = 2; z = 4.0 * std::numbers::pi / (81.0 * sqrt3); break;
        case GapClass::gse: beta = 4; z = 4.0 * std::numbers::pi / (729.0 * sqrt3); break;
        default: break;
    }
    // Unfolded surmise on [0, inf) normalized by z; folding onto [0,1] doubles it.
    return 2.0 / z * std::pow(r + r * r, beta) / std::pow(1.0 + r + r * r, 1.0 + 1.5 * beta);
}

double reference_gap_mean(GapClass cls) {
    const int n = 4000;  // Simpson
    const double h = 1.0 / n;
    double s = 0;
    for (int i = 0; i <= n; ++i) {
        const double r = i * h;
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        s += w * r * reference_gap_density(cls, r);
    }
    return s * h / 3.0;
}

std::vector<double> sff_single(const VecD& e, double beta, const std::vector<double>& times) {
    if (e.size() == 0) throw InvalidArgument("sff: empty spectrum");
    const double e0 = e.minCoeff();
    const Index n = e.size();
    std::vector<double> x(n), w(n);
    for (Index i = 0; i < n; ++i) {
        x[i] = e(i) - e0;
        w[i] = std::exp(-beta * x[i]);
    }
    const double z = pairwise_sum(w);
    std::vector<double> out(times.size());
    std::vector<double> re(n), im(n);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        for (Index i = 0; i < n; ++i) {
            re[i] = w[i] * std::cos(t * x[i]);
            im[i] = w[i] * std::sin(t * x[i]);
        }
        const double a = pairwise_sum(re), b = pairwise_sum(im);
        out[k] = (a * a + b * b) / (z * z);
    }
    return out;
}

double sff_double_sum(const VecD& e, double beta, double t) {
    const double e0 = e.minCoeff();
    const Index n = e.size();
    double num = 0, z = 0;
    for (Index m = 0; m < n; ++m) {
        const double wm = std::exp(-beta * (e(m) - e0));
        z += wm;
        for (Index k = 0; k < n; ++k) num += wm * std::exp(-beta * (e(k) - e0)) * std::cos(t * (e(m) - e(k)));
    }
    return num / (z * z);
}

SffCurve sff(const std::vector<VecD>& spectra, double beta, const std::vector<double>& times) {
    if (spectra.empty()) throw InvalidArgument("sff: no spectra");
    for (double t : times)
        if (t < 0) throw InvalidArgument("sff: times must be >= 0");
    std::vector<std::vector<double>> rows;
    rows.reserve(spectra.size());
    for (const auto& s : spectra) rows.push_back(sff_single(s, beta, times));
    const CurveStats cs = curve_stats(rows);
    SffCurve c;
    c.times = times;
    c.K = cs.mean;
    c.err = cs.err;
    c.beta = beta;
    c.n_realizations = cs.n;
    return c;
}

std::vector<Range> segment_clusters(const VecD& e, double threshold) {
    const Index n = e.size();
    std::vector<Range> out;
    if (n == 0) return out;
    if (n == 1) return {{0, 1}};
    std::vector<double> gaps(n - 1);
    for (Index i = 0; i + 1 < n; ++i) gaps[i] = e(i + 1) - e(i);
    std::vector<double> tmp = gaps;
    std::nth_element(tmp.begin(), tmp.begin() + tmp.size() / 2, tmp.end());
    const double median = tmp[tmp.size() / 2];
    Index start = 0;
    for (Index i = 0; i + 1 < n; ++i)
        if (gaps[i] > threshold * median) {
            out.emplace_back(start, i + 1);
            start = i + 1;
        }
    out.emplace_back(start, n);
    return out;
}

std::optional<double> detect_plateau(const std::vector<double>& t, const std::vector<double>& K,
                                     const PlateauOptions& opt) {
    if (t.size() != K.size()) throw InvalidArgument("detect_plateau: size mismatch");
    if (!(opt.K_pl > 0)) throw InvalidArgument("detect_plateau: K_pl must be > 0");
    const std::size_t n = t.size();
    auto ok = [&](std::size_t i) { return std::abs(K[i] - opt.K_pl) / opt.K_pl < opt.delta; };
    // run_end[i]: first index >= i that fails the tolerance.
    std::vector<std::size_t> run_end(n + 1, n);
    for (std::size_t i = n; i-- > 0;) run_end[i] = ok(i) ? run_end[i + 1] : i;
    for (std::size_t i = 0; i < n; ++i) {
        if (t[i] <= opt.search_start || !ok(i)) continue;
        const double edge = t[i] + opt.window;
        if (t.back() < edge) break;
        const std::size_t stop = run_end[i];
        if (stop == n || t[stop] > edge) return t[i];
    }
    return std::nullopt;
}

double PowerLaw::operator()(double t) const { return A * std::pow(t, exponent); }

PowerLaw fit_power_law(const std::vector<double>& t, const std::vector<double>& K, double lo, double hi) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] >= lo && t[i] <= hi && t[i] > 0 && K[i] > 0) {
            lx.push_back(std::log(t[i]));
            ly.push_back(std::log(K[i]));
        }
    if (lx.size() < 2) throw InvalidArgument("fit_power_law: fewer than 2 points in window");
    const double n = static_cast<double>(lx.size());
    const double mx = pairwise_sum(lx) / n, my = pairwise_sum(ly) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    PowerLaw p;
    p.exponent = sxy / sxx;
    p.A = std::exp(my - p.exponent * mx);
    return p;
}

std::optional<double> detect_ramp(const std::vector<double>& t, const std::vector<double>& K, const PowerLaw& ref,
                                  const RampOptions& opt) {
    if (t.size() != K.size()) throw InvalidArgument("detect_ramp: size mismatch");
    bool have_prev = false;
    double prev_t = 0, prev_d = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < opt.lo || t[i] > opt.hi) continue;
        const double kr = ref(t[i]);
        const double d = (K[i] - kr) / kr;
        if (opt.interpolate_crossings && have_prev && ((prev_d < 0) != (d < 0)))
            return prev_t + (t[i] - prev_t) * prev_d / (prev_d - d);
        if (std::abs(d) < opt.delta) return t[i];
        have_prev = true;
        prev_t = t[i];
        prev_d = d;
    }
    return std::nullopt;
}

double heisenberg_time(const VecD& e, std::optional<Range> range) {
    const Range r = range.value_or(Range{0, e.size()});
    const Index n = r.second - r.first;
    if (n < 2) throw InvalidArgument("heisenberg_time needs >= 2 levels");
    const double span = e(r.second - 1) - e(r.first);
    if (!(span > 0)) throw InvalidArgument("heisenberg_time: zero spectral span");
    return 2.0 * std::numbers::pi * static_cast<double>(n - 1) / span;
}

std::vector<double> log_grid(double t0, double t1, std::size_t n) {
    if (!(t0 > 0 && t1 > t0) || n < 2) throw InvalidArgument("log_grid needs 0 < t0 < t1 and n >= 2");
    std::vector<double> g(n);
    const double a = std::log(t0), b = std::log(t1);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
    g.front() = t0;
    g.back() = t1;
    return g;
}

std::vector<double> linear_grid(double t0, double t1, std::size_t n) {
    if (!(t1 > t0) || n < 2) throw InvalidArgument("linear_grid needs t1 > t0 and n >= 2");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = t0 + (t1 - t0) * static_cast<double>(i) / (n - 1);
    return g;
}

}  // namespace ysyk
