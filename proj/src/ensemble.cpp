// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/ensemble.hpp"

#include "ysyk/disorder.hpp"
#include "ysyk/hamiltonian.hpp"
#include "ysyk/hilbert.hpp"
#include "ysyk/rng.hpp"
#include "ysyk/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace ysyk {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string code_version() { return "0.1.0"; }

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::ysyk: return "ysyk";
        case ModelKind::syk2: return "syk2";
        case ModelKind::syk4: return "syk4";
        case ModelKind::sw_effective: return "sw_effective";
        case ModelKind::lowrank: return "lowrank";
    }
    return "?";
}

ModelKind parse_model(const std::string& s) {
    for (ModelKind m : {ModelKind::ysyk, ModelKind::syk2, ModelKind::syk4, ModelKind::sw_effective, ModelKind::lowrank})
        if (to_string(m) == s) return m;
    throw ConfigError("model", "unknown model '" + s + "'");
}

double RunConfig::omega0_at(std::size_t p) const {
    if (p >= omega0.size()) throw InvalidArgument("sweep point out of range");
    return axis_is_ratio ? ModelParams::omega0_for_ratio(omega0[p], g) : omega0[p];
}

namespace {

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (!(v[k] > v[k - 1])) return false;
    return true;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join17(const std::vector<double>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + fmt17(v[k]);
    return out;
}

std::vector<double> grid_from(const Config& c, const std::string& prefix) {
    if (c.has(prefix + ".times")) return c.get_doubles(prefix + ".times");
    if (!c.has(prefix + ".t_max")) return {};
    const double t0 = c.get_double(prefix + ".t_min", 0.0);
    const double t1 = c.get_double(prefix + ".t_max");
    const auto n = static_cast<std::size_t>(c.get_int(prefix + ".points", 200));
    const std::string kind = c.get_string(prefix + ".grid", "log");
    if (kind == "log") {
        if (!(t0 > 0.0)) throw ConfigError(prefix + ".t_min", "log grid needs t_min > 0");
        std::vector<double> g = log_grid(t0, t1, n);
        if (c.get_bool(prefix + ".with_zero", false)) g.insert(g.begin(), 0.0);
        return g;
    }
    if (kind == "linear") return linear_grid(t0, t1, n);
    throw ConfigError(prefix + ".grid", "expected log or linear");
}

}  // namespace

void RunConfig::validate() const {
    if (n_realizations < 1) throw ConfigError("realizations", "must be >= 1");
    if (omega0.empty()) throw ConfigError("params.omega0", "empty axis");
    for (double w : omega0)
        if (!(w > 0.0)) throw ConfigError(axis_is_ratio ? "params.ratio" : "params.omega0", "must be > 0");
    if (!strictly_increasing(sff_times)) throw ConfigError("sff.times", "grid must be strictly increasing");
    if (!strictly_increasing(otoc_times)) throw ConfigError("otoc.times", "grid must be strictly increasing");
    if (threads < 1) throw ConfigError("threads", "must be >= 1");
    if (N < 2 || N % 2) throw ConfigError("params.N", "must be even and >= 2");
    for (const auto& d : diagnostics)
        if (d != "dos" && d != "gapratio" && d != "sff" && d != "otoc")
            throw ConfigError("diagnostics", "unknown diagnostic '" + d + "'");
    if (diagnostics.count("sff") && sff_times.empty()) throw ConfigError("sff.t_max", "sff requested without a grid");
    if (diagnostics.count("otoc") && otoc_times.empty())
        throw ConfigError("otoc.t_max", "otoc requested without a grid");
    if (otoc_i < 0 || otoc_i >= N || otoc_j < 0 || otoc_j >= N) throw ConfigError("otoc.i", "mode out of range");
    if (max_fail_fraction < 0.0 || max_fail_fraction > 1.0)
        throw ConfigError("run.max_fail_fraction", "must lie in [0, 1]");
}

const std::set<std::string>& run_config_keys() {
    static const std::set<std::string> keys = {
        "model", "realizations", "seed", "seed_mode", "threads", "diagnostics",
        "params.N", "params.M", "params.N_b", "params.g", "params.J", "params.mu", "params.beta",
        "params.omega0", "params.ratio", "lowrank.field",
        "dos.bins", "gap.bins", "gap.cluster",
        "sff.t_min", "sff.t_max", "sff.points", "sff.grid", "sff.times", "sff.with_zero",
        "otoc.t_min", "otoc.t_max", "otoc.points", "otoc.grid", "otoc.times", "otoc.with_zero",
        "otoc.i", "otoc.j", "otoc.trace", "otoc.vectors", "otoc.cluster",
        "plateau.delta", "plateau.window", "ramp.delta", "ramp.fit_lo", "ramp.fit_hi",
        "solver.lowest_k", "solver.dense_budget", "run.max_fail_fraction",
    };
    return keys;
}

RunConfig run_config_from(const Config& c) {
    c.require_known(run_config_keys());
    RunConfig rc;
    rc.model = parse_model(c.get_string("model", "ysyk"));
    rc.n_realizations = static_cast<std::size_t>(c.get_int("realizations", 1));
    rc.base_seed = static_cast<std::uint64_t>(c.get_int("seed", 0));
    const std::string mode = c.get_string("seed_mode", "crn");
    if (mode == "crn") rc.seed_mode = SeedMode::crn;
    else if (mode == "independent") rc.seed_mode = SeedMode::independent;
    else throw ConfigError("seed_mode", "expected crn or independent");
    rc.threads = static_cast<int>(c.get_int("threads", 1));
    if (c.has("diagnostics"))
        for (const auto& d : c.get_strings("diagnostics")) rc.diagnostics.insert(d);

    rc.N = static_cast<int>(c.get_int("params.N", rc.N));
    rc.M = static_cast<int>(c.get_int("params.M", rc.M));
    rc.N_b = static_cast<int>(c.get_int("params.N_b", rc.N_b));
    rc.g = c.get_double("params.g", rc.g);
    rc.J = c.get_double("params.J", rc.J);
    rc.mu = c.get_double("params.mu", rc.mu);
    rc.beta = c.get_double("params.beta", rc.beta);
    const std::string field = c.get_string("lowrank.field", "complex");
    if (field == "complex") rc.lowrank_field = LowRankField::complex;
    else if (field == "real") rc.lowrank_field = LowRankField::real;
    else throw ConfigError("lowrank.field", "expected complex or real");
    if (c.has("params.omega0") && c.has("params.ratio"))
        throw ConfigError("params.ratio", "give either params.omega0 or params.ratio, not both");
    if (c.has("params.ratio")) {
        rc.omega0 = c.get_doubles("params.ratio");
        rc.axis_is_ratio = true;
    } else if (c.has("params.omega0")) {
        rc.omega0 = c.get_doubles("params.omega0");
    }

    rc.dos_bins = static_cast<int>(c.get_int("dos.bins", rc.dos_bins));
    rc.gap_bins = static_cast<int>(c.get_int("gap.bins", rc.gap_bins));
    rc.gap_cluster = static_cast<int>(c.get_int("gap.cluster", rc.gap_cluster));
    rc.sff_times = grid_from(c, "sff");
    rc.otoc_times = grid_from(c, "otoc");
    rc.otoc_i = static_cast<int>(c.get_int("otoc.i", rc.otoc_i));
    rc.otoc_j = static_cast<int>(c.get_int("otoc.j", rc.otoc_j));
    const std::string trace = c.get_string("otoc.trace", "exact");
    if (trace == "exact") rc.otoc_trace = TraceMethod::exact;
    else if (trace == "stochastic") rc.otoc_trace = TraceMethod::stochastic;
    else throw ConfigError("otoc.trace", "expected exact or stochastic");
    rc.otoc_vectors = static_cast<int>(c.get_int("otoc.vectors", rc.otoc_vectors));
    rc.otoc_cluster = static_cast<int>(c.get_int("otoc.cluster", rc.otoc_cluster));
    rc.plateau_delta = c.get_double("plateau.delta", rc.plateau_delta);
    rc.plateau_window = c.get_double("plateau.window", rc.plateau_window);
    rc.ramp_delta = c.get_double("ramp.delta", rc.ramp_delta);
    rc.ramp_fit_lo = c.get_double("ramp.fit_lo", rc.ramp_fit_lo);
    rc.ramp_fit_hi = c.get_double("ramp.fit_hi", rc.ramp_fit_hi);
    rc.lowest_k = static_cast<int>(c.get_int("solver.lowest_k", rc.lowest_k));
    rc.dense_budget = static_cast<Index>(c.get_int("solver.dense_budget", rc.dense_budget));
    rc.max_fail_fraction = c.get_double("run.max_fail_fraction", rc.max_fail_fraction);
    rc.validate();
    return rc;
}

Config to_config(const RunConfig& rc) {
    Config c;
    c.set("model", to_string(rc.model));
    c.set("realizations", std::to_string(rc.n_realizations));
    c.set("seed", std::to_string(rc.base_seed));
    c.set("seed_mode", rc.seed_mode == SeedMode::crn ? "crn" : "independent");
    std::string diags;
    for (const auto& d : rc.diagnostics) diags += (diags.empty() ? "" : ", ") + d;
    if (!diags.empty()) c.set("diagnostics", diags);
    c.set("params.N", std::to_string(rc.N));
    c.set("params.M", std::to_string(rc.M));
    c.set("params.N_b", std::to_string(rc.N_b));
    c.set("params.g", fmt17(rc.g));
    c.set("params.J", fmt17(rc.J));
    c.set("params.mu", fmt17(rc.mu));
    c.set("params.beta", fmt17(rc.beta));
    if (rc.model == ModelKind::lowrank)
        c.set("lowrank.field", rc.lowrank_field == LowRankField::complex ? "complex" : "real");
    // a trailing comma keeps one-element axes typed as lists
    c.set(rc.axis_is_ratio ? "params.ratio" : "params.omega0", join17(rc.omega0) + (rc.omega0.size() == 1 ? "," : ""));
    c.set("dos.bins", std::to_string(rc.dos_bins));
    c.set("gap.bins", std::to_string(rc.gap_bins));
    c.set("gap.cluster", std::to_string(rc.gap_cluster));
    if (!rc.sff_times.empty()) c.set("sff.times", join17(rc.sff_times));
    if (!rc.otoc_times.empty()) c.set("otoc.times", join17(rc.otoc_times));
    c.set("otoc.i", std::to_string(rc.otoc_i));
    c.set("otoc.j", std::to_string(rc.otoc_j));
    c.set("otoc.trace", rc.otoc_trace == TraceMethod::exact ? "exact" : "stochastic");
    c.set("otoc.vectors", std::to_string(rc.otoc_vectors));
    c.set("otoc.cluster", std::to_string(rc.otoc_cluster));
    c.set("plateau.delta", fmt17(rc.plateau_delta));
    c.set("plateau.window", fmt17(rc.plateau_window));
    c.set("ramp.delta", fmt17(rc.ramp_delta));
    c.set("ramp.fit_lo", fmt17(rc.ramp_fit_lo));
    c.set("ramp.fit_hi", fmt17(rc.ramp_fit_hi));
    c.set("solver.lowest_k", std::to_string(rc.lowest_k));
    c.set("solver.dense_budget", std::to_string(rc.dense_budget));
    c.set("run.max_fail_fraction", fmt17(rc.max_fail_fraction));
    return c;
}

std::uint64_t realization_seed(const RunConfig& rc, std::size_t realization, std::size_t point) {
    const std::uint64_t s = hash64(rc.base_seed, realization);
    return rc.seed_mode == SeedMode::crn ? s : hash64(s, point + 1);
}

std::size_t EnsembleResult::n_ok() const {
    return static_cast<std::size_t>(std::count_if(realizations.begin(), realizations.end(),
                                                  [](const RealizationRecord& r) { return r.ok; }));
}

std::size_t EnsembleResult::n_failed() const { return realizations.size() - n_ok(); }

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

struct Partial {
    RealizationRecord rec;
    std::vector<double> eigenvalues;  // kept for the pooled DOS
    std::map<std::string, std::vector<double>> curves;
};

HilbertSpace space_for(const RunConfig& rc) {
    if (rc.model == ModelKind::ysyk) return build_space(rc.N, rc.M, rc.N_b);
    return build_space(rc.N, 0, 1);
}

SparseHamiltonian build_model(const RunConfig& rc, const HilbertSpace& space, double omega0, std::uint64_t seed) {
    switch (rc.model) {
        case ModelKind::ysyk: {
            ModelParams mp;
            mp.omega0 = omega0;
            mp.g = rc.g;
            mp.mu = rc.mu;
            return build_ysyk(space, mp, sample_ysyk(rc.N, rc.M, rc.g, seed));
        }
        case ModelKind::syk2: return build_sykq(space, sample_sykq(rc.N, 2, rc.J, seed));
        case ModelKind::syk4: return build_sykq(space, sample_sykq(rc.N, 4, rc.J, seed));
        case ModelKind::sw_effective: return build_sw_effective(space, sample_ysyk(rc.N, rc.M, rc.g, seed), omega0);
        case ModelKind::lowrank: return build_lowrank(space, sample_lowrank(rc.N, rc.M, seed, rc.lowrank_field));
    }
    throw InvalidArgument("unknown model");
}

VecD select_cluster(const VecD& e, int cluster) {
    if (cluster < 0) return e;
    const auto cl = segment_clusters(e);
    if (static_cast<std::size_t>(cluster) >= cl.size())
        throw SolverError("requested cluster " + std::to_string(cluster) + " but found " + std::to_string(cl.size()));
    return e.segment(cl[cluster].first, cl[cluster].second - cl[cluster].first);
}

Partial compute(const RunConfig& rc, const HilbertSpace& space, std::size_t point, std::size_t i) {
    Partial p;
    p.rec.index = i;
    p.rec.seed = realization_seed(rc, i, point);
    const double omega0 = rc.omega0_at(point);
    const bool want_otoc = rc.diagnostics.count("otoc") > 0;

    const SparseHamiltonian h = build_model(rc, space, omega0, p.rec.seed);
    DiagOptions dopt;
    dopt.vectors = want_otoc;
    dopt.dense_budget = rc.dense_budget;
    if (rc.lowest_k > 0) {
        dopt.mode = DiagMode::lowest_k;
        dopt.k = rc.lowest_k;
        dopt.iterative.seed = p.rec.seed;
    }
    if (want_otoc && h.dim() > rc.dense_budget)
        throw InvalidArgument("otoc needs dense eigenvectors: D = " + std::to_string(h.dim()) +
                              " exceeds solver.dense_budget");
    const Spectrum spec = diagonalize(h, dopt);
    const VecD& e = spec.eigenvalues;
    p.rec.scalars["E0"] = e(0);
    p.rec.scalars["t_H"] = heisenberg_time(e);

    if (rc.diagnostics.count("dos")) p.eigenvalues.assign(e.data(), e.data() + e.size());
    if (rc.diagnostics.count("gapratio")) {
        const GapRatioStats gr = gap_ratios(select_cluster(e, rc.gap_cluster), rc.gap_bins);
        p.rec.scalars["r_mean"] = gr.mean;
        p.curves["gap_ratio"] = gr.histogram.y;
    }
    if (rc.diagnostics.count("sff")) p.curves["sff"] = sff_single(e, rc.beta, rc.sff_times);
    if (want_otoc) {
        OtocCurve oc;
        if (rc.otoc_cluster >= 0) {
            const auto cl = segment_clusters(e);
            if (static_cast<std::size_t>(rc.otoc_cluster) >= cl.size())
                throw SolverError("otoc cluster index out of range");
            oc = otoc_restricted(space, spec, cl[rc.otoc_cluster], rc.otoc_i, rc.otoc_j, rc.otoc_times, rc.beta);
        } else {
            OtocOptions oo;
            oo.beta = rc.beta;
            oo.trace = rc.otoc_trace;
            oo.n_vectors = rc.otoc_vectors;
            oo.seed = hash64(p.rec.seed, 0x07);
            oo.dense_budget = rc.dense_budget;
            oc = otoc_full(space, spec, rc.otoc_i, rc.otoc_j, rc.otoc_times, oo);
        }
        p.curves["otoc"] = oc.F;
    }
    return p;
}

json partial_json(const Partial& p) {
    json j;
    j["index"] = p.rec.index;
    j["seed"] = p.rec.seed;
    j["ok"] = p.rec.ok;
    j["error"] = p.rec.error;
    j["scalars"] = p.rec.scalars;
    j["eigenvalues"] = p.eigenvalues;
    j["curves"] = p.curves;
    return j;
}

Partial partial_from(const json& j) {
    Partial p;
    p.rec.index = j.at("index").get<std::size_t>();
    p.rec.seed = j.at("seed").get<std::uint64_t>();
    p.rec.ok = j.at("ok").get<bool>();
    p.rec.error = j.at("error").get<std::string>();
    p.rec.scalars = j.at("scalars").get<std::map<std::string, double>>();
    p.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    p.curves = j.at("curves").get<std::map<std::string, std::vector<double>>>();
    return p;
}

void write_file(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ArtifactError("cannot write " + tmp.string());
        out << text;
        if (!out) throw ArtifactError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArtifactError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> bin_centres(int bins) {
    std::vector<double> x(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) x[b] = (b + 0.5) / bins;
    return x;
}

NamedCurve aggregate_curve(const std::vector<const Partial*>& ok, const std::string& name, std::vector<double> x,
                           std::string x_label, std::string y_label) {
    std::vector<std::vector<double>> rows;
    rows.reserve(ok.size());
    for (const Partial* p : ok) rows.push_back(p->curves.at(name));
    const CurveStats cs = curve_stats(rows);
    NamedCurve c;
    c.x_label = std::move(x_label);
    c.y_label = std::move(y_label);
    c.x = std::move(x);
    c.mean = cs.mean;
    c.err = cs.err;
    c.n = cs.n;
    return c;
}

void aggregate(const RunConfig& rc, const std::vector<Partial>& parts, EnsembleResult& r) {
    std::vector<const Partial*> ok;
    for (const auto& p : parts)
        if (p.rec.ok) ok.push_back(&p);
    std::sort(ok.begin(), ok.end(), [](const Partial* a, const Partial* b) {
        return a->rec.seed != b->rec.seed ? a->rec.seed < b->rec.seed : a->rec.index < b->rec.index;
    });
    for (const auto& p : parts) r.realizations.push_back(p.rec);
    if (ok.empty()) return;

    std::map<std::string, std::vector<double>> scalars;
    for (const Partial* p : ok)
        for (const auto& [k, v] : p->rec.scalars) scalars[k].push_back(v);
    for (const auto& [k, v] : scalars) r.scalars[k] = mean_stderr(v);

    if (rc.diagnostics.count("dos")) {
        std::vector<VecD> spectra;
        for (const Partial* p : ok)
            spectra.push_back(Eigen::Map<const VecD>(p->eigenvalues.data(), static_cast<Index>(p->eigenvalues.size())));
        const DosResult d = dos(spectra, rc.dos_bins);
        NamedCurve c;
        c.x_label = "E[J]";
        c.y_label = "rho[1/J]";
        c.x = d.histogram.x;
        c.mean = d.histogram.y;
        // pooled histogram: no per-bin error
        c.err = d.histogram.err.empty() ? std::vector<double>(c.x.size(), 0.0) : d.histogram.err;
        c.n = ok.size();
        r.curves["dos"] = std::move(c);
        r.detectors["dos_fit_mean"] = d.fit.mean;
        r.detectors["dos_fit_sigma"] = d.fit.sigma;
        r.detectors["dos_fit_residual"] = d.fit.residual_l2;
        r.detectors["dos_peaks"] = static_cast<double>(local_maxima(d.histogram.y, 0.1).size());
    }
    if (rc.diagnostics.count("gapratio"))
        r.curves["gap_ratio"] = aggregate_curve(ok, "gap_ratio", bin_centres(rc.gap_bins), "r[1]", "P(r)[1]");
    if (rc.diagnostics.count("sff")) {
        NamedCurve c = aggregate_curve(ok, "sff", rc.sff_times, "t[1/J]", "K[1]");
        const double K_pl = late_time_mean(c.x, c.mean);
        r.detectors["K_plateau"] = K_pl;
        PlateauOptions po;
        po.K_pl = K_pl;
        po.delta = rc.plateau_delta;
        po.window = rc.plateau_window;
        if (auto t = detect_plateau(c.x, c.mean, po)) r.detectors["t_plateau"] = *t;
        if (rc.ramp_fit_hi > rc.ramp_fit_lo && rc.ramp_fit_lo > 0.0) {
            const PowerLaw pl = fit_power_law(c.x, c.mean, rc.ramp_fit_lo, rc.ramp_fit_hi);
            r.detectors["ramp_fit_A"] = pl.A;
            r.detectors["ramp_fit_exponent"] = pl.exponent;
            RampOptions ro;
            ro.delta = rc.ramp_delta;
            ro.lo = rc.ramp_fit_hi;
            ro.hi = r.detectors.count("t_plateau") ? r.detectors["t_plateau"] : c.x.back();
            if (auto t = detect_ramp(c.x, c.mean, pl, ro)) r.detectors["t_ramp"] = *t;
        }
        r.curves["sff"] = std::move(c);
    }
    if (rc.diagnostics.count("otoc")) {
        NamedCurve c = aggregate_curve(ok, "otoc", rc.otoc_times, "t[1/J]", "F[1]");
        r.detectors["F_late"] = late_time_mean(c.x, c.mean);
        r.curves["otoc"] = std::move(c);
    }
}

}  // namespace

EnsembleResult run(const RunConfig& rc, std::size_t point, const RunOptions& opt) {
    rc.validate();
    const Config cfg = to_config(rc);
    const std::string hash = cfg.hash();
    fs::path dir;
    if (!opt.out_dir.empty()) {
        dir = opt.out_dir;
        if (fs::exists(dir / "summary.json")) {
            EnsembleResult cached = load(dir.string());
            if (cached.config_hash != hash || cached.point != point)
                throw ArtifactError("config hash mismatch in " + dir.string() + ": artifact " + cached.config_hash +
                                    ", requested " + hash);
            return cached;
        }
        fs::create_directories(dir / "partial");
        const fs::path cfg_path = dir / "config.json";
        if (fs::exists(cfg_path) && read_file(cfg_path) != cfg.canonical_json() + "\n")
            throw ArtifactError("config hash mismatch: " + dir.string() + " holds a partial run of another config");
        write_file(cfg_path, cfg.canonical_json() + "\n");
    }

    const HilbertSpace space = space_for(rc);
    std::vector<Partial> parts(rc.n_realizations);
    std::vector<bool> done(rc.n_realizations, false);
    if (!dir.empty() && opt.checkpoint) {
        for (std::size_t i = 0; i < rc.n_realizations; ++i) {
            const fs::path f = dir / "partial" / ("r" + std::to_string(i) + ".json");
            if (!fs::exists(f)) continue;
            try {
                parts[i] = partial_from(json::parse(read_file(f)));
                done[i] = parts[i].rec.seed == realization_seed(rc, i, point);
            } catch (const std::exception&) {
                done[i] = false;  // torn checkpoint, recompute
            }
        }
    }

    parallel_for(rc.n_realizations, rc.threads, [&](std::size_t i) {
        if (done[i]) return;
        try {
            parts[i] = compute(rc, space, point, i);
        } catch (const std::exception& ex) {
            parts[i] = Partial{};
            parts[i].rec.index = i;
            parts[i].rec.seed = realization_seed(rc, i, point);
            parts[i].rec.ok = false;
            parts[i].rec.error = ex.what();
        }
        if (!dir.empty() && opt.checkpoint)
            write_file(dir / "partial" / ("r" + std::to_string(i) + ".json"), partial_json(parts[i]).dump());
    });

    EnsembleResult r;
    r.config_hash = hash;
    r.config_json = cfg.canonical_json();
    r.code_version = code_version();
    r.omega0 = rc.omega0_at(point);
    r.point = point;
    aggregate(rc, parts, r);

    const std::size_t failed = r.n_failed();
    if (static_cast<double>(failed) > rc.max_fail_fraction * static_cast<double>(rc.n_realizations)) {
        std::string msg = std::to_string(failed) + " of " + std::to_string(rc.n_realizations) + " realizations failed";
        for (const auto& rec : r.realizations)
            if (!rec.ok) {
                msg += "; first: seed " + std::to_string(rec.seed) + ": " + rec.error;
                break;
            }
        throw EnsembleFailure(msg);
    }
    if (!dir.empty()) save(r, dir.string());
    return r;
}

std::vector<EnsembleResult> sweep(const RunConfig& rc, const RunOptions& opt) {
    std::vector<EnsembleResult> out;
    out.reserve(rc.omega0.size());
    for (std::size_t p = 0; p < rc.omega0.size(); ++p) {
        RunOptions o = opt;
        if (!opt.out_dir.empty()) o.out_dir = (fs::path(opt.out_dir) / ("point_" + std::to_string(p))).string();
        out.push_back(run(rc, p, o));
    }
    return out;
}

void save(const EnsembleResult& r, const std::string& dir_s) {
    const fs::path dir(dir_s);
    fs::create_directories(dir / "curves");
    if (!r.config_json.empty()) write_file(dir / "config.json", r.config_json + "\n");

    json curves = json::object();
    for (const auto& [name, c] : r.curves) {
        std::string csv = c.x_label + "," + c.y_label + "," + c.y_label + "_err\n";
        for (std::size_t k = 0; k < c.x.size(); ++k)
            csv += fmt17(c.x[k]) + "," + fmt17(c.mean[k]) + "," + fmt17(k < c.err.size() ? c.err[k] : 0.0) + "\n";
        write_file(dir / "curves" / (name + ".csv"), csv);
        curves[name] = {{"file", "curves/" + name + ".csv"},
                        {"x_label", c.x_label},
                        {"y_label", c.y_label},
                        {"points", c.x.size()},
                        {"n", c.n}};
    }

    std::string seeds = "# index seed status\n";
    json recs = json::array();
    for (const auto& rec : r.realizations) {
        seeds += std::to_string(rec.index) + " " + std::to_string(rec.seed) + (rec.ok ? " ok\n" : " failed\n");
        recs.push_back({{"index", rec.index}, {"seed", rec.seed}, {"ok", rec.ok}, {"error", rec.error},
                        {"scalars", rec.scalars}});
    }
    write_file(dir / "seeds.txt", seeds);

    json s;
    s["format"] = "ysyk-ensemble";
    s["version"] = r.version;
    s["config_hash"] = r.config_hash;
    s["code_version"] = r.code_version;
    s["omega0"] = r.omega0;
    s["point"] = r.point;
    s["n_ok"] = r.n_ok();
    s["n_failed"] = r.n_failed();
    json sc = json::object();
    for (const auto& [k, m] : r.scalars) sc[k] = {{"mean", m.mean}, {"err", m.err}, {"n", m.n}};
    s["scalars"] = sc;
    s["detectors"] = r.detectors;
    s["curves"] = curves;
    s["realizations"] = recs;
    write_file(dir / "summary.json", s.dump(2) + "\n");
}

EnsembleResult load(const std::string& dir_s) {
    const fs::path dir(dir_s);
    json s;
    try {
        s = json::parse(read_file(dir / "summary.json"));
    } catch (const json::exception& e) {
        throw ArtifactError("corrupt summary.json in " + dir_s + ": " + e.what());
    }
    try {
        if (s.at("format").get<std::string>() != "ysyk-ensemble") throw ArtifactError("not an ensemble artifact");
        EnsembleResult r;
        r.version = s.at("version").get<int>();
        if (r.version != kArtifactVersion)
            throw ArtifactError("artifact version " + std::to_string(r.version) + " is not supported (expected " +
                                std::to_string(kArtifactVersion) + ")");
        r.config_hash = s.at("config_hash").get<std::string>();
        r.code_version = s.at("code_version").get<std::string>();
        r.omega0 = s.at("omega0").get<double>();
        r.point = s.at("point").get<std::size_t>();
        if (fs::exists(dir / "config.json")) {
            r.config_json = read_file(dir / "config.json");
            if (!r.config_json.empty() && r.config_json.back() == '\n') r.config_json.pop_back();
        }
        for (const auto& [k, v] : s.at("scalars").items())
            r.scalars[k] = MeanErr{v.at("mean").get<double>(), v.at("err").get<double>(), v.at("n").get<std::size_t>()};
        r.detectors = s.at("detectors").get<std::map<std::string, double>>();
        for (const auto& rec : s.at("realizations")) {
            RealizationRecord rr;
            rr.index = rec.at("index").get<std::size_t>();
            rr.seed = rec.at("seed").get<std::uint64_t>();
            rr.ok = rec.at("ok").get<bool>();
            rr.error = rec.at("error").get<std::string>();
            rr.scalars = rec.at("scalars").get<std::map<std::string, double>>();
            r.realizations.push_back(std::move(rr));
        }
        if (r.n_ok() != s.at("n_ok").get<std::size_t>()) throw ArtifactError("realization count mismatch");
        for (const auto& [name, meta] : s.at("curves").items()) {
            NamedCurve c;
            c.x_label = meta.at("x_label").get<std::string>();
            c.y_label = meta.at("y_label").get<std::string>();
            c.n = meta.at("n").get<std::size_t>();
            const auto points = meta.at("points").get<std::size_t>();
            std::istringstream in(read_file(dir / meta.at("file").get<std::string>()));
            std::string line;
            std::getline(in, line);
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                double x = 0, y = 0, e = 0;
                char tail = 0;
                if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &x, &y, &e, &tail) != 3)
                    throw ArtifactError("corrupt row in curve " + name + ": '" + line + "'");
                c.x.push_back(x);
                c.mean.push_back(y);
                c.err.push_back(e);
            }
            if (c.x.size() != points)
                throw ArtifactError("curve " + name + " is truncated: " + std::to_string(c.x.size()) + " of " +
                                    std::to_string(points) + " rows");
            r.curves[name] = std::move(c);
        }
        return r;
    } catch (const json::exception& e) {
        throw ArtifactError("corrupt summary.json in " + dir_s + ": " + e.what());
    }
}

}  // namespace ysyk
