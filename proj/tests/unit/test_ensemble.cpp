// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/disorder.hpp"
#include "ysyk/ensemble.hpp"
#include "ysyk/hamiltonian.hpp"
#include "ysyk/rng.hpp"
#include "ysyk/spectral.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

using namespace ysyk;
namespace fs = std::filesystem;

namespace {

RunConfig small_run() {
    RunConfig rc;
    rc.model = ModelKind::ysyk;
    rc.N = 4;
    rc.M = 2;
    rc.N_b = 1;
    rc.omega0 = {0.5, 2.0};
    rc.diagnostics = {"dos", "gapratio", "sff", "otoc"};
    rc.n_realizations = 6;
    rc.base_seed = 11;
    rc.sff_times = log_grid(0.1, 100.0, 20);
    rc.otoc_times = linear_grid(0.0, 10.0, 11);
    rc.dos_bins = 10;
    rc.gap_bins = 5;
    return rc;
}

// scratch directory removed on scope exit
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("ysyk_test_" + name)) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string str() const { return path.string(); }
};

void check_same(const EnsembleResult& a, const EnsembleResult& b) {
    REQUIRE(a.curves.size() == b.curves.size());
    for (const auto& [name, c] : a.curves) {
        const auto& d = b.curves.at(name);
        CHECK(c.x == d.x);
        CHECK(c.mean == d.mean);
        INFO(name);
        CHECK(c.err == d.err);
    }
    CHECK(a.detectors == b.detectors);
    CHECK(a.config_hash == b.config_hash);
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("seed derivation") {
    RunConfig rc = small_run();
    CHECK(realization_seed(rc, 3, 0) == hash64(11, 3));
    CHECK(realization_seed(rc, 3, 1) == realization_seed(rc, 3, 0));
    rc.seed_mode = SeedMode::independent;
    CHECK(realization_seed(rc, 3, 1) == hash64(hash64(11, 3), 2));
    CHECK(realization_seed(rc, 3, 1) != realization_seed(rc, 3, 0));
}

TEST_CASE("parallel_for visits each index once") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("one realization reproduces the single-spectrum result") {
    RunConfig rc = small_run();
    rc.n_realizations = 1;
    rc.diagnostics = {"sff"};
    const auto r = run(rc);
    const auto space = build_space(4, 2, 1);
    ModelParams mp;
    mp.omega0 = 0.5;
    const VecD e = diagonalize(build_ysyk(space, mp, sample_ysyk(4, 2, 1.0, realization_seed(rc, 0, 0)))).eigenvalues;
    const auto k = sff_single(e, 0.0, rc.sff_times);
    const auto& c = r.curves.at("sff");
    for (std::size_t i = 0; i < k.size(); ++i) {
        CHECK(c.mean[i] == doctest::Approx(k[i]).epsilon(1e-14));
        CHECK(c.err[i] == 0.0);
    }
    CHECK(r.n_ok() == 1);
}

TEST_CASE("results are deterministic and independent of the thread count") {
    RunConfig rc = small_run();
    const auto a = run(rc);
    const auto b = run(rc);
    check_same(a, b);
    rc.threads = 3;
    const auto c = run(rc);
    check_same(a, c);
    CHECK(a.curves.at("otoc").mean[0] == doctest::Approx(1.0));
    CHECK(a.n_ok() == 6);
}

TEST_CASE("save and load round trip") {
    TempDir dir("roundtrip");
    const RunConfig rc = small_run();
    RunOptions opt;
    opt.out_dir = dir.str();
    const auto a = run(rc, 0, opt);
    CHECK(fs::exists(dir.path / "config.json"));
    CHECK(fs::exists(dir.path / "summary.json"));
    CHECK(fs::exists(dir.path / "seeds.txt"));
    CHECK(fs::exists(dir.path / "curves" / "sff.csv"));
    const auto b = load(dir.str());
    check_same(a, b);
    CHECK(b.version == kArtifactVersion);
    CHECK(b.realizations.size() == a.realizations.size());

    std::ifstream in(dir.path / "curves" / "sff.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header.find(',') != std::string::npos);

    // a second run with the same config is a cache hit
    const auto c = run(rc, 0, opt);
    check_same(a, c);
}

TEST_CASE("truncated or mismatched artifacts are rejected") {
    TempDir dir("corrupt");
    const RunConfig rc = small_run();
    RunOptions opt;
    opt.out_dir = dir.str();
    (void)run(rc, 0, opt);
    {
        std::ifstream in(dir.path / "curves" / "sff.csv");
        std::string header, first;
        std::getline(in, header);
        std::getline(in, first);
        in.close();
        std::ofstream out(dir.path / "curves" / "sff.csv", std::ios::trunc);
        out << header << "\n" << first << "\n";
    }
    CHECK_THROWS_AS((void)load(dir.str()), ArtifactError);

    TempDir other("mismatch");
    opt.out_dir = other.str();
    (void)run(rc, 0, opt);
    RunConfig changed = rc;
    changed.n_realizations = 7;
    CHECK_THROWS_AS((void)run(changed, 0, opt), ArtifactError);
}

TEST_CASE("resume from checkpoints") {
    TempDir dir("resume");
    const RunConfig rc = small_run();
    RunOptions opt;
    opt.out_dir = dir.str();
    const auto full = run(rc, 0, opt);
    REQUIRE(fs::exists(dir.path / "partial"));
    // simulate an interrupted run: drop the summary and some checkpoints
    fs::remove(dir.path / "summary.json");
    fs::remove(dir.path / "partial" / "r2.json");
    fs::remove(dir.path / "partial" / "r5.json");
    const auto resumed = run(rc, 0, opt);
    check_same(full, resumed);
}

TEST_CASE("failed realizations are quarantined") {
    RunConfig rc = small_run();
    rc.diagnostics = {"gapratio"};
    rc.gap_cluster = 50;
    try {
        (void)run(rc);
        FAIL("expected EnsembleFailure");
    } catch (const EnsembleFailure& e) {
        CHECK(std::string(e.what()).find("cluster") != std::string::npos);
    }
    rc.max_fail_fraction = 1.0;
    const auto r = run(rc);
    CHECK(r.n_failed() == rc.n_realizations);
    for (const auto& rec : r.realizations) {
        CHECK_FALSE(rec.ok);
        CHECK_FALSE(rec.error.empty());
    }
}

TEST_CASE("sweep gives one result per point and CRN reduces scatter") {
    RunConfig rc = small_run();
    rc.diagnostics = {"sff"};
    rc.omega0 = {1.0, 1.01, 1.02, 1.03};
    rc.n_realizations = 4;
    const auto crn = sweep(rc);
    REQUIRE(crn.size() == 4);
    CHECK(crn[2].omega0 == doctest::Approx(1.02));
    rc.seed_mode = SeedMode::independent;
    const auto ind = sweep(rc);
    // neighbouring points differ less with shared couplings
    auto roughness = [](const std::vector<EnsembleResult>& rs) {
        double s = 0.0;
        for (std::size_t p = 1; p < rs.size(); ++p)
            s += std::abs(rs[p].scalars.at("E0").mean - rs[p - 1].scalars.at("E0").mean);
        return s;
    };
    CHECK(roughness(crn) < roughness(ind));
}

TEST_CASE("config conversion") {
    const RunConfig rc = small_run();
    const Config c = to_config(rc);
    const RunConfig back = run_config_from(c);
    CHECK(back.N == rc.N);
    CHECK(back.omega0 == rc.omega0);
    CHECK(back.sff_times == rc.sff_times);
    CHECK(back.diagnostics == rc.diagnostics);
    CHECK(to_config(back).hash() == c.hash());

    Config bad = c;
    bad.set("params.omgea0", "1");
    try {
        (void)run_config_from(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key == "params.omgea0");
    }
    RunConfig odd = rc;
    odd.N = 5;
    CHECK_THROWS((void)odd.validate());
    CHECK(parse_model(to_string(ModelKind::lowrank)) == ModelKind::lowrank);
}

}  // TEST_SUITE
