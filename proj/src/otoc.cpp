// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/otoc.hpp"

#include "ysyk/rng.hpp"
#include "ysyk/stats.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace ysyk {

namespace {

void check_modes(const HilbertSpace& space, int i, int j) {
    if (i < 0 || j < 0 || i >= space.n_fermions || j >= space.n_fermions)
        throw InvalidArgument("OTOC mode index out of range");
    if (i == j) throw InvalidArgument("OTOC needs distinct modes i != j");
}

// V^dag diag(2n - 1) V = 2 V_S^dag V_S - 1 for orthonormal columns V, S the rows with n = 1.
MatC project_sign_operator(const MatC& v, const VecD& sign) {
    std::vector<Index> rows;
    for (Index r = 0; r < sign.size(); ++r)
        if (sign(r) > 0) rows.push_back(r);
    MatC vs(static_cast<Index>(rows.size()), v.cols());
    for (Index k = 0; k < vs.rows(); ++k) vs.row(k) = v.row(rows[k]);
    MatC out = MatC::Zero(v.cols(), v.cols());
    out.selfadjointView<Eigen::Lower>().rankUpdate(vs.adjoint(), 2.0);
    out = out.selfadjointView<Eigen::Lower>();
    out.diagonal().array() -= 1.0;
    return out;
}

VecD boltzmann(const VecD& e, double beta) {
    const double e0 = e.minCoeff();
    VecD w = (-beta * (e.array() - e0)).exp().matrix();
    return w / w.sum();
}

void finish(OtocCurve& c) {
    c.C.resize(c.F.size());
    for (std::size_t k = 0; k < c.F.size(); ++k) c.C[k] = 2.0 - 2.0 * c.F[k];
}

}  // namespace

OtocCurve otoc_full(const HilbertSpace& space, const Spectrum& spec, int i, int j, const std::vector<double>& times,
                    const OtocOptions& opt) {
    check_modes(space, i, j);
    const Index D = static_cast<Index>(space.total_dim);
    if (spec.eigenvectors.rows() != D || spec.eigenvectors.cols() != D)
        throw InvalidArgument("otoc_full needs the complete set of eigenvectors");
    const MatC& V = spec.eigenvectors;
    const MatC At = project_sign_operator(V, occupation_sign_diag(space, i));
    const MatC Bt = project_sign_operator(V, occupation_sign_diag(space, j));
    const VecD e = spec.eigenvalues.array() - spec.eigenvalues.minCoeff();

    OtocCurve out;
    out.times = times;
    out.beta = opt.beta;
    out.mode_i = i;
    out.mode_j = j;
    out.F.resize(times.size());
    out.err.assign(times.size(), 0.0);

    if (opt.trace == TraceMethod::exact) {
        const VecD rho = boltzmann(spec.eigenvalues, opt.beta);
        MatC At_t(D, D), X(D, D);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const VecC p = (cplx(0, 1) * times[k] * e.cast<cplx>()).array().exp().matrix();
            At_t = p.asDiagonal() * At * p.conjugate().asDiagonal();
            X.noalias() = At_t * Bt;
            double f = 0.0;
            for (Index m = 0; m < D; ++m) f += rho(m) * (X.row(m).transpose().array() * X.col(m).array()).sum().real();
            out.F[k] = f;
        }
    } else {
        const Index T = static_cast<Index>(times.size());
        if (opt.n_vectors < 1) throw InvalidArgument("stochastic trace needs n_vectors >= 1");
        MatC phase(D, T);
        for (Index k = 0; k < T; ++k)
            phase.col(k) = (cplx(0, 1) * times[k] * e.cast<cplx>()).array().exp().matrix();
        const VecD half = (-0.5 * opt.beta * e.array()).exp().matrix();
        Rng rng(opt.seed);
        std::vector<std::vector<double>> rows;
        MatC W(D, T), Y(D, T);
        for (int v = 0; v < opt.n_vectors; ++v) {
            VecC phi(D);
            for (Index r = 0; r < D; ++r) phi(r) = cplx(rng.normal(), rng.normal()) * half(r);
            const double norm2 = phi.squaredNorm();
            const VecC b_phi = Bt * phi;
            W = phase.conjugate().array().colwise() * b_phi.array();
            Y.noalias() = At * W;
            Y.array() *= phase.array();
            W.noalias() = Bt * Y;
            W.array() *= phase.conjugate().array();
            Y.noalias() = At * W;
            Y.array() *= phase.array();
            std::vector<double> f(T);
            for (Index k = 0; k < T; ++k) f[k] = phi.dot(Y.col(k)).real() / norm2;
            rows.push_back(std::move(f));
        }
        const CurveStats cs = curve_stats(rows);
        out.F = cs.mean;
        out.err = cs.err;
    }
    finish(out);
    return out;
}

OtocCurve otoc_full(const HilbertSpace& space, const SparseHamiltonian& h, int i, int j,
                    const std::vector<double>& times, const OtocOptions& opt) {
    if (h.dim() > opt.dense_budget)
        throw InvalidArgument("OTOC over the full space exceeds the dense budget; use otoc_restricted on a cluster");
    DiagOptions d;
    d.vectors = true;
    d.dense_budget = opt.dense_budget;
    const Spectrum s = diagonalize(h, d);
    return otoc_full(space, s, i, j, times, opt);
}

OtocCurve otoc_exponentiation(const HilbertSpace& space, const SparseHamiltonian& h, int i, int j,
                              const std::vector<double>& times, double beta) {
    check_modes(space, i, j);
    const MatC H = h.dense();
    const VecC a = occupation_sign_diag(space, i).cast<cplx>();
    const VecC b = occupation_sign_diag(space, j).cast<cplx>();
    MatC rho = (static_cast<cplx>(-beta) * H).exp();
    rho /= rho.trace();
    OtocCurve out;
    out.times = times;
    out.beta = beta;
    out.mode_i = i;
    out.mode_j = j;
    out.err.assign(times.size(), 0.0);
    for (double t : times) {
        const MatC U = (cplx(0, t) * H).exp();
        const MatC At = U * a.asDiagonal() * U.adjoint();
        const MatC prod = rho * At * b.asDiagonal() * At * b.asDiagonal();
        out.F.push_back(prod.trace().real());
    }
    finish(out);
    return out;
}

OtocCurve otoc_restricted(const HilbertSpace& space, const Spectrum& spec, Range cluster, int i, int j,
                          const std::vector<double>& times, double beta) {
    check_modes(space, i, j);
    const Index n = cluster.second - cluster.first;
    if (n <= 0) throw InvalidArgument("otoc_restricted: empty cluster");
    if (!spec.has_vectors() || cluster.second > spec.eigenvectors.cols())
        throw InvalidArgument("otoc_restricted needs eigenvectors for every cluster level");
    const MatC Vc = spec.eigenvectors.middleCols(cluster.first, n);
    const MatC Ac = project_sign_operator(Vc, occupation_sign_diag(space, i));
    const MatC Bc = project_sign_operator(Vc, occupation_sign_diag(space, j));
    const VecD ec = spec.eigenvalues.segment(cluster.first, n);
    const VecD rho = boltzmann(ec, beta);
    const VecD e = ec.array() - ec.minCoeff();

    OtocCurve out;
    out.times = times;
    out.beta = beta;
    out.mode_i = i;
    out.mode_j = j;
    out.err.assign(times.size(), 0.0);
    for (double t : times) {
        const VecC p = (cplx(0, 1) * t * e.cast<cplx>()).array().exp().matrix();
        const MatC At = p.asDiagonal() * Ac * p.conjugate().asDiagonal();
        const MatC X = At * Bc - Bc * At;
        double c = 0.0;
        for (Index m = 0; m < n; ++m) c += rho(m) * X.col(m).squaredNorm();
        out.F.push_back(1.0 - 0.5 * c);
    }
    finish(out);
    return out;
}

std::vector<double> savitzky_golay(const std::vector<double>& y, int window, int order) {
    const int n = static_cast<int>(y.size());
    if (window < 1 || window % 2 == 0) throw InvalidArgument("Savitzky-Golay window must be odd");
    if (order < 0 || order >= window) throw InvalidArgument("Savitzky-Golay order must be < window");
    if (window > n) throw InvalidArgument("Savitzky-Golay window larger than the series");
    const int h = window / 2;
    MatD J(window, order + 1);
    for (int r = 0; r < window; ++r) {
        const double u = static_cast<double>(r - h) / std::max(1, h);
        double p = 1.0;
        for (int c = 0; c <= order; ++c, p *= u) J(r, c) = p;
    }
    const MatD pinv = (J.transpose() * J).ldlt().solve(J.transpose());  // (order+1) x window
    auto weights_at = [&](int offset) {
        const double u = static_cast<double>(offset) / std::max(1, h);
        Eigen::RowVectorXd e(order + 1);
        double p = 1.0;
        for (int c = 0; c <= order; ++c, p *= u) e(c) = p;
        return Eigen::RowVectorXd(e * pinv);
    };
    const Eigen::RowVectorXd centre = weights_at(0);
    std::vector<double> out(n);
    Eigen::Map<const VecD> ym(y.data(), n);
    for (int k = h; k < n - h; ++k) out[k] = centre.dot(ym.segment(k - h, window));
    for (int k = 0; k < h; ++k) {
        out[k] = weights_at(k - h).dot(ym.segment(0, window));
        out[n - 1 - k] = weights_at(h - k).dot(ym.segment(n - window, window));
    }
    return out;
}

FilteredOtoc filter_micromotion(const std::vector<double>& t, const std::vector<double>& F, int window, int order) {
    if (t.size() != F.size()) throw InvalidArgument("filter_micromotion: size mismatch");
    FilteredOtoc f;
    f.times = t;
    f.original = F;
    f.decay = savitzky_golay(F, window, order);
    f.residual.resize(F.size());
    for (std::size_t k = 0; k < F.size(); ++k) f.residual[k] = F[k] - f.decay[k];
    f.window = window;
    f.order = order;
    return f;
}

int filter_window_for_period(double period, double dt, double periods) {
    int w = static_cast<int>(std::lround(periods * period / dt));
    if (w % 2 == 0) ++w;
    return std::max(w, 5);
}

double oscillation_period(const std::vector<double>& t, const std::vector<double>& y, double lo, double hi) {
    std::vector<double> cross;
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k - 1] < lo || t[k] > hi) continue;
        if (y[k - 1] < 0 && y[k] >= 0) cross.push_back(t[k - 1] + (t[k] - t[k - 1]) * (-y[k - 1]) / (y[k] - y[k - 1]));
    }
    if (cross.size() < 2) throw InvalidArgument("oscillation_period: fewer than two upward crossings");
    return (cross.back() - cross.front()) / static_cast<double>(cross.size() - 1);
}

double oscillation_amplitude(const std::vector<double>& t, const std::vector<double>& y, double lo, double hi) {
    std::vector<double> sq;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= lo && t[k] <= hi) sq.push_back(y[k] * y[k]);
    if (sq.empty()) throw InvalidArgument("oscillation_amplitude: empty window");
    return std::sqrt(2.0 * pairwise_sum(sq) / static_cast<double>(sq.size()));
}

ScaledCurve rescale_curve(const std::vector<double>& t, const std::vector<double>& v, double time_scale,
                          double amp_scale) {
    ScaledCurve c;
    c.x.resize(t.size());
    c.y.resize(v.size());
    for (std::size_t k = 0; k < t.size(); ++k) c.x[k] = time_scale * t[k];
    for (std::size_t k = 0; k < v.size(); ++k) c.y[k] = amp_scale * v[k];
    return c;
}

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double q) {
    if (x.empty() || q < x.front() || q > x.back()) throw InvalidArgument("interpolate: point outside the grid");
    auto it = std::lower_bound(x.begin(), x.end(), q);
    const std::size_t k = static_cast<std::size_t>(it - x.begin());
    if (k == 0) return y[0];
    const double w = (q - x[k - 1]) / (x[k] - x[k - 1]);
    return (1 - w) * y[k - 1] + w * y[k];
}

double collapse_check(const std::vector<ScaledCurve>& curves, double lo, double hi, std::size_t n_grid,
                      bool log_axis) {
    if (curves.size() < 2) throw InvalidArgument("collapse_check needs at least two curves");
    double a = lo, b = hi;
    for (const auto& c : curves) {
        if (c.x.empty()) throw InvalidArgument("collapse_check: empty curve");
        a = std::max(a, c.x.front());
        b = std::min(b, c.x.back());
    }
    if (!(b > a)) throw InvalidArgument("collapse_check: rescaled windows do not overlap");
    const std::vector<double> grid = log_axis ? log_grid(a, b, n_grid) : linear_grid(a, b, n_grid);
    std::vector<std::vector<double>> vals;
    for (const auto& c : curves) {
        std::vector<double> v;
        for (double q : grid) v.push_back(interpolate(c.x, c.y, q));
        vals.push_back(std::move(v));
    }
    double worst = 0.0;
    for (std::size_t p = 0; p < vals.size(); ++p)
        for (std::size_t q = p + 1; q < vals.size(); ++q)
            for (std::size_t k = 0; k < grid.size(); ++k) worst = std::max(worst, std::abs(vals[p][k] - vals[q][k]));
    return worst;
}

double nested_commutator_trace(const SpMat& h, const VecD& a, const VecD& b) {
    double s = 0.0;
    for (Index r = 0; r < h.outerSize(); ++r)
        for (SpMat::InnerIterator it(h, r); it; ++it) {
            const Index x = it.row(), y = it.col();
            const double w = (a(y) - a(x)) * (b(y) - b(x));
            s += std::norm(it.value()) * w * w;
        }
    return s;
}

double nested_commutator_trace(const MatC& h, const MatC& a, const MatC& b) {
    const MatC ha = h * a - a * h;
    const MatC x = ha * b - b * ha;
    return (x * x).trace().real();
}

double late_time_mean(const std::vector<double>& t, const std::vector<double>& v) {
    if (t.empty()) throw InvalidArgument("late_time_mean: empty curve");
    const double cut = t.back() / 10.0;
    std::vector<double> sel;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= cut) sel.push_back(v[k]);
    return pairwise_sum(sel) / static_cast<double>(sel.size());
}

}  // namespace ysyk
