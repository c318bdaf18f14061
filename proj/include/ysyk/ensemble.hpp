// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file ensemble.hpp
 * @brief Disorder-averaged runs: seeding, a thread pool, aggregation and
 * on-disk artifacts.
 *
 * Realization i draws its couplings from hash64(base_seed, i). Along a sweep
 * axis the same seeds are reused (common random numbers) unless
 * seed_mode = independent, in which case point p uses hash64(hash64(base_seed, i), p + 1).
 * Aggregation sorts successful realizations by seed and sums pairwise, so
 * the output does not depend on the order in which workers finish.
 */

#pragma once

#include "ysyk/config.hpp"
#include "ysyk/disorder.hpp"
#include "ysyk/otoc.hpp"
#include "ysyk/stats.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ysyk {

inline constexpr int kArtifactVersion = 1;

enum class ModelKind { ysyk, syk2, syk4, sw_effective, lowrank };
enum class SeedMode { crn, independent };

[[nodiscard]] std::string to_string(ModelKind m);
[[nodiscard]] ModelKind parse_model(const std::string& s);

struct RunConfig {
    ModelKind model = ModelKind::ysyk;
    int N = 8;
    int M = 4;
    int N_b = 1;
    double g = 1.0;
    double J = 1.0;
    double mu = 0.0;
    double beta = 0.0;
    LowRankField lowrank_field = LowRankField::complex;
    std::vector<double> omega0 = {1.0};  // sweep axis; run() uses the first entry
    bool axis_is_ratio = false;          // axis holds omega0 / g^(2/3)

    std::set<std::string> diagnostics;   // dos, gapratio, sff, otoc
    std::size_t n_realizations = 1;
    std::uint64_t base_seed = 0;
    SeedMode seed_mode = SeedMode::crn;
    int threads = 1;

    int dos_bins = 100;
    int gap_bins = 50;
    int gap_cluster = -1;  // -1: whole spectrum, else a segment_clusters index
    std::vector<double> sff_times;
    std::vector<double> otoc_times;
    int otoc_i = 0;
    int otoc_j = 1;
    TraceMethod otoc_trace = TraceMethod::exact;
    int otoc_vectors = 1;
    int otoc_cluster = -1;  // >= 0 selects otoc_restricted on that cluster
    double plateau_delta = 0.1;
    double plateau_window = 1.9;
    double ramp_delta = 5e-3;
    double ramp_fit_lo = 0.0;  // power-law reference window; 0 disables ramp detection
    double ramp_fit_hi = 0.0;
    int lowest_k = 0;          // > 0 switches to the iterative solver
    Index dense_budget = 4096;
    double max_fail_fraction = 0.01;

    [[nodiscard]] double omega0_at(std::size_t p) const;
    void validate() const;
};

// Keys accepted by run_config_from.
[[nodiscard]] const std::set<std::string>& run_config_keys();
// Rejects unknown keys (ConfigError names the key).
[[nodiscard]] RunConfig run_config_from(const Config& c);
[[nodiscard]] Config to_config(const RunConfig& rc);

[[nodiscard]] std::uint64_t realization_seed(const RunConfig& rc, std::size_t realization, std::size_t point);

struct NamedCurve {
    std::string x_label;  // header names, with units
    std::string y_label;
    std::vector<double> x;
    std::vector<double> mean;
    std::vector<double> err;
    std::size_t n = 0;
};

struct RealizationRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string error;
    std::map<std::string, double> scalars;
};

struct EnsembleResult {
    int version = kArtifactVersion;
    std::string config_hash;
    std::string config_json;
    std::string code_version;
    double omega0 = 0.0;
    std::size_t point = 0;
    std::map<std::string, NamedCurve> curves;
    std::map<std::string, MeanErr> scalars;       // aggregated per-realization scalars
    std::map<std::string, double> detectors;      // applied to mean curves
    std::vector<RealizationRecord> realizations;  // all, in index order
    [[nodiscard]] std::size_t n_ok() const;
    [[nodiscard]] std::size_t n_failed() const;
};

// More than max_fail_fraction of realizations failed.
struct EnsembleFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArtifactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::string out_dir;      // empty: nothing written
    bool checkpoint = true;   // per-realization records under out_dir/partial
};

[[nodiscard]] EnsembleResult run(const RunConfig& rc, std::size_t point = 0, const RunOptions& opt = {});

// One result per axis entry; each point writes to out_dir/point_<p> when out_dir is set.
[[nodiscard]] std::vector<EnsembleResult> sweep(const RunConfig& rc, const RunOptions& opt = {});

// Artifact directory: config.json, curves/*.csv, summary.json, seeds.txt.
void save(const EnsembleResult& r, const std::string& dir);
[[nodiscard]] EnsembleResult load(const std::string& dir);

// Runs `fn(i)` for i in [0, n) on `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

[[nodiscard]] std::string code_version();

}  // namespace ysyk
