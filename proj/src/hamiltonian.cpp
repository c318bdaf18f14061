// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/hamiltonian.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace ysyk {

namespace {

using Triplet = Eigen::Triplet<cplx, std::int64_t>;

SpMat from_triplets(Index dim, const std::vector<Triplet>& t) {
    SpMat m(dim, dim);
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

// Exactly Hermitian part (A + A^dag)/2; conj and + commute exactly in IEEE.
SpMat hermitize(const SpMat& a) {
    SpMat adj = a.adjoint();
    SpMat h = (a + adj) * 0.5;
    h.prune(cplx(0.0, 0.0));
    h.makeCompressed();
    return h;
}

}  // namespace

SpMat fermion_quadratic(const FermionBasis& basis, const MatC& h) {
    const int N = basis.n_modes();
    if (h.rows() != N || h.cols() != N) throw InvalidArgument("single-particle matrix has wrong shape");
    std::vector<Triplet> t;
    t.reserve(basis.size() * static_cast<std::size_t>(basis.n_particles() * (N - basis.n_particles() + 1)));
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const Word w = basis[col];
        for (int j = 0; j < N; ++j) {
            if (!number_op_diag(w, j)) continue;
            for (int i = 0; i < N; ++i) {
                const cplx hij = h(i, j);
                if (hij == cplx(0.0, 0.0)) continue;
                auto r = apply_hop(w, i, j);
                if (!r) continue;
                t.emplace_back(static_cast<std::int64_t>(basis.index_of(r->word)), static_cast<std::int64_t>(col),
                               static_cast<double>(r->sign) * hij);
            }
        }
    }
    return from_triplets(static_cast<Index>(basis.size()), t);
}

SpMat fermion_set_operator(const FermionBasis& basis, const std::vector<std::vector<int>>& sets,
                           const MatC& coupling) {
    const Index P = static_cast<Index>(sets.size());
    if (coupling.rows() != P || coupling.cols() != P) throw InvalidArgument("set coupling has wrong shape");
    std::vector<Triplet> t;
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const Word w = basis[col];
        for (Index b = 0; b < P; ++b) {
            bool occ = true;
            for (int j : sets[b]) occ = occ && number_op_diag(w, j);
            if (!occ) continue;
            for (Index a = 0; a < P; ++a) {
                const cplx v = coupling(a, b);
                if (v == cplx(0.0, 0.0)) continue;
                auto r = apply_string(w, sets[a], sets[b]);
                if (!r) continue;
                t.emplace_back(static_cast<std::int64_t>(basis.index_of(r->word)), static_cast<std::int64_t>(col),
                               static_cast<double>(r->sign) * v);
            }
        }
    }
    return from_triplets(static_cast<Index>(basis.size()), t);
}

SparseHamiltonian build_ysyk(const HilbertSpace& space, const ModelParams& params, const YsykCouplings& c) {
    if (!(params.omega0 > 0.0)) throw InvalidArgument("omega0 must be > 0");
    if (c.N != space.n_fermions || c.M != space.n_bosons) throw InvalidArgument("couplings do not match the space");

    const int M = space.n_bosons;
    const int Nb = space.boson_cutoff;
    const std::size_t Bd = space.boson_dim;
    const double pref = 1.0 / std::sqrt(2.0 * params.omega0 * M * space.n_fermions);

    std::vector<SpMat> blocks;
    blocks.reserve(M);
    for (int k = 0; k < M; ++k) blocks.push_back(fermion_quadratic(space.fermions, c.slice(k)));

    std::size_t nnz = space.total_dim;
    for (const auto& b : blocks) nnz += 2 * static_cast<std::size_t>(b.nonZeros()) * Bd;
    std::vector<Triplet> t;
    t.reserve(nnz);

    const double shift = -params.mu * space.n_particles;
    for (std::size_t b = 0; b < Bd; ++b) {
        const double diag = params.omega0 * (space.bosons.total(b) + 0.5 * M) + shift;
        for (std::size_t f = 0; f < space.fermion_dim; ++f) {
            const auto idx = static_cast<std::int64_t>(space.index(f, b));
            t.emplace_back(idx, idx, cplx(diag, 0.0));
        }
        for (int k = 0; k < M; ++k) {
            const int n = space.bosons.occupation(b, k);
            if (n >= Nb) continue;
            const std::size_t bp = b + space.bosons.stride(k);  // n_k -> n_k + 1
            const double amp = pref * std::sqrt(static_cast<double>(n + 1));
            const SpMat& F = blocks[k];
            for (Index fr = 0; fr < F.outerSize(); ++fr) {
                for (SpMat::InnerIterator it(F, fr); it; ++it) {
                    const cplx v = amp * it.value();
                    const auto row = static_cast<std::int64_t>(space.index(static_cast<std::size_t>(fr), bp));
                    const auto col = static_cast<std::int64_t>(space.index(static_cast<std::size_t>(it.col()), b));
                    t.emplace_back(row, col, v);
                    t.emplace_back(col, row, std::conj(v));
                }
            }
        }
    }

    SparseHamiltonian h;
    h.matrix = from_triplets(static_cast<Index>(space.total_dim), t);
    h.model = "ysyk";
    h.params = {{"N", space.n_fermions}, {"M", M}, {"N_b", Nb}, {"omega0", params.omega0},
                {"g", c.g}, {"mu", params.mu}, {"seed", static_cast<double>(c.seed)}};
    return h;
}

SparseHamiltonian build_sykq(const HilbertSpace& space, const SykqCouplings& c) {
    if (space.n_fermions < c.q) throw InvalidArgument("SYK_q requires N >= q");
    if (c.N != space.n_fermions) throw InvalidArgument("couplings do not match the space");
    if (space.boson_dim != 1) throw InvalidArgument("SYK_q lives on a pure fermion space (M = 0)");
    SparseHamiltonian h;
    h.matrix = hermitize(fermion_set_operator(space.fermions, c.sets, c.matrix));
    h.model = "syk" + std::to_string(c.q);
    h.params = {{"N", c.N}, {"q", c.q}, {"J", c.J}, {"seed", static_cast<double>(c.seed)}};
    return h;
}

SparseHamiltonian build_sw_effective(const HilbertSpace& space, const YsykCouplings& c, double omega0) {
    if (!(omega0 > 0.0)) throw InvalidArgument("omega0 must be > 0");
    if (c.N != space.n_fermions) throw InvalidArgument("couplings do not match the space");
    const Index fd = static_cast<Index>(space.fermion_dim);
    SpMat acc(fd, fd);
    for (int k = 0; k < c.M; ++k) {
        const SpMat G = fermion_quadratic(space.fermions, c.slice(k));
        acc += SpMat(G * G);
    }
    const double pref = -1.0 / (2.0 * omega0 * omega0 * c.M * c.N);
    SparseHamiltonian h;
    h.matrix = hermitize(acc * pref);
    h.model = "sw_effective";
    h.params = {{"N", c.N}, {"M", c.M}, {"omega0", omega0}, {"g", c.g}, {"seed", static_cast<double>(c.seed)}};
    return h;
}

SparseHamiltonian build_sw_effective(const YsykCouplings& c, double omega0) {
    return build_sw_effective(build_space(c.N, 0, 1), c, omega0);
}

SparseHamiltonian build_sw_effective_tensor(const HilbertSpace& space, const YsykCouplings& c, double omega0) {
    const int N = c.N;
    const auto& basis = space.fermions;
    // J[(i*N + j)*N*N + i'*N + j']
    std::vector<cplx> J(static_cast<std::size_t>(N) * N * N * N, cplx(0.0, 0.0));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int ip = 0; ip < N; ++ip)
                for (int jp = 0; jp < N; ++jp) {
                    cplx s(0.0, 0.0);
                    for (int k = 0; k < c.M; ++k) s += c(i, j, k) * c(ip, jp, k);
                    J[((static_cast<std::size_t>(i) * N + j) * N + ip) * N + jp] = s / static_cast<double>(c.M);
                }
    std::vector<Triplet> t;
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const Word w = basis[col];
        for (int jp = 0; jp < N; ++jp)
            for (int ip = 0; ip < N; ++ip) {
                auto r1 = apply_hop(w, ip, jp);
                if (!r1) continue;
                for (int j = 0; j < N; ++j)
                    for (int i = 0; i < N; ++i) {
                        auto r2 = apply_hop(r1->word, i, j);
                        if (!r2) continue;
                        const cplx v = J[((static_cast<std::size_t>(i) * N + j) * N + ip) * N + jp];
                        t.emplace_back(static_cast<std::int64_t>(basis.index_of(r2->word)),
                                       static_cast<std::int64_t>(col), static_cast<double>(r1->sign * r2->sign) * v);
                    }
            }
    }
    SparseHamiltonian h;
    h.matrix = hermitize(from_triplets(static_cast<Index>(basis.size()), t) * (-1.0 / (2.0 * omega0 * omega0 * N)));
    h.model = "sw_effective_tensor";
    h.params = {{"N", N}, {"M", c.M}, {"omega0", omega0}, {"g", c.g}};
    return h;
}

SparseHamiltonian build_lowrank(const HilbertSpace& space, const LowRankCouplings& c) {
    if (c.N != space.n_fermions) throw InvalidArgument("couplings do not match the space");
    if (space.boson_dim != 1) throw InvalidArgument("low-rank model lives on a pure fermion space (M = 0)");
    SparseHamiltonian h;
    h.matrix = hermitize(fermion_set_operator(space.fermions, c.pairs, c.matrix));
    h.model = "lowrank";
    h.params = {{"N", c.N}, {"M", c.M}, {"seed", static_cast<double>(c.seed)}};
    return h;
}

void export_triplets(const SparseHamiltonian& h, std::ostream& os) {
    os << "# ysyk-triplets 1 " << h.dim() << ' ' << h.matrix.nonZeros() << '\n';
    os << std::setprecision(17);
    for (Index r = 0; r < h.matrix.outerSize(); ++r)
        for (SpMat::InnerIterator it(h.matrix, r); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag() << '\n';
}

SpMat import_triplets(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidArgument("triplet stream is empty");
    std::istringstream hdr(line);
    std::string hash, tag;
    int version = 0;
    Index dim = 0;
    std::int64_t nnz = 0;
    hdr >> hash >> tag >> version >> dim >> nnz;
    if (hash != "#" || tag != "ysyk-triplets" || version != 1 || dim <= 0)
        throw InvalidArgument("not a ysyk triplet file");
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(nnz));
    std::int64_t r = 0, c = 0;
    double re = 0, im = 0;
    while (is >> r >> c >> re >> im) t.emplace_back(r, c, cplx(re, im));
    if (static_cast<std::int64_t>(t.size()) != nnz) throw InvalidArgument("triplet count does not match header");
    return from_triplets(dim, t);
}

double hermiticity_defect(const SpMat& h) {
    SpMat adj = h.adjoint();
    SpMat d = h - adj;
    double m = 0.0;
    for (Index r = 0; r < d.outerSize(); ++r)
        for (SpMat::InnerIterator it(d, r); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

}  // namespace ysyk
