// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Each run subcommand loads a config, applies
// --set overrides, runs the sweep axis through the ensemble driver and
// writes a run directory plus plot scripts.
//
// Exit codes: 0 ok, 1 config or usage error, 2 runtime failure, 3 failed check.

#include "criteria.hpp"

#include "ysyk/config.hpp"
#include "ysyk/ensemble.hpp"
#include "ysyk/feasibility.hpp"
#include "ysyk/hilbert.hpp"
#include "ysyk/rescaling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ysyk;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheck = 3;

struct Common {
    std::string config;
    std::vector<std::string> sets;
    std::string out;
    int threads = 0;  // 0: YSYK_THREADS or 1
    std::optional<long long> seed;
    bool check = false;
};

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

int env_threads() {
    const char* v = std::getenv("YSYK_THREADS");
    if (v == nullptr || *v == '\0') return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1) throw ConfigError("YSYK_THREADS", std::string("expected a positive integer, got '") + v + "'");
    return static_cast<int>(n);
}

Config load_config(const Common& o) {
    Config c = o.config.empty() ? Config{} : Config::load(o.config);
    for (const auto& s : o.sets) c.apply_override(s);
    return c;
}

// Moves keys under `section.` out of `c`.
Config take_section(Config& c, const std::string& section) {
    Config taken, rest;
    const std::string prefix = section + ".";
    for (const auto& [k, v] : c.entries()) {
        if (k.rfind(prefix, 0) == 0) taken.set(k, v);
        else rest.set(k, v);
    }
    c = rest;
    return taken;
}

void write_text(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + p.string());
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string num17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t dimension(const RunConfig& rc) {
    return rc.model == ModelKind::ysyk ? build_space(rc.N, rc.M, rc.N_b).total_dim : build_space(rc.N, 0, 1).total_dim;
}

// ---- plot scripts ----------------------------------------------------------

struct PanelStyle {
    const char* title;
    const char* xscale;
    const char* yscale;
};

PanelStyle style_for(const std::string& curve) {
    if (curve == "sff") return {"spectral form factor", "log", "log"};
    if (curve == "otoc") return {"out-of-time-order correlator", "log", "linear"};
    if (curve == "dos") return {"density of states", "linear", "linear"};
    if (curve == "gap_ratio") return {"gap-ratio distribution", "linear", "linear"};
    return {"", "linear", "linear"};
}

// constant ratio between neighbours
bool looks_logarithmic(const std::vector<double>& t) {
    if (t.size() < 3 || !(t[0] > 0.0)) return false;
    const double q = t[1] / t[0];
    return std::abs(t.back() / t[t.size() - 2] - q) < 1e-9 * q && q > 1.0;
}

std::string axis_label(const RunConfig& rc) { return rc.axis_is_ratio ? "omega0/g^(2/3)" : "omega0"; }

// One panel per curve kind, one series per sweep point.
void write_plots(const fs::path& out, const RunConfig& rc, const std::vector<EnsembleResult>& rs) {
    if (rs.empty()) return;
    for (const auto& [name, c0] : rs.front().curves) {
        const PanelStyle st = style_for(name);
        std::string s = "# ysyk-plot 1\n";
        s += "panel " + name + "\n";
        s += std::string("title \"") + st.title + "\"\n";
        const char* xscale = name == "otoc" && !looks_logarithmic(rc.otoc_times) ? "linear" : st.xscale;
        s += std::string("xaxis ") + xscale + " \"" + c0.x_label + "\"\n";
        s += std::string("yaxis ") + st.yscale + " \"" + c0.y_label + "\"\n";
        for (std::size_t p = 0; p < rs.size(); ++p)
            s += "series \"point_" + std::to_string(p) + "/curves/" + name + ".csv\" x=1 y=2 err=3 label=\"" +
                 axis_label(rc) + " = " + num(rc.omega0[p]) + "\"\n";
        if (name == "sff") s += "hline " + num17(1.0 / static_cast<double>(dimension(rc))) + " label=\"1/D\"\n";
        s += "end\n";
        write_text(out / (name + ".plot"), s);
    }
}

// Per-point scalars (realization means) and detectors, one row per sweep point.
void write_scalars(const fs::path& out, const RunConfig& rc, const std::vector<EnsembleResult>& rs) {
    if (rs.empty()) return;
    std::set<std::string> sc, det;
    for (const auto& r : rs) {
        for (const auto& [k, v] : r.scalars) sc.insert(k);
        for (const auto& [k, v] : r.detectors) det.insert(k);
    }
    std::string csv = std::string(rc.axis_is_ratio ? "ratio[1]" : "omega0[J]") + ",omega0[J],n_ok[1]";
    for (const auto& k : sc) csv += "," + k + "," + k + "_err";
    for (const auto& k : det) csv += "," + k;
    csv += "\n";
    for (std::size_t p = 0; p < rs.size(); ++p) {
        const auto& r = rs[p];
        csv += num17(rc.omega0[p]) + "," + num17(r.omega0) + "," + std::to_string(r.n_ok());
        for (const auto& k : sc) {
            const auto it = r.scalars.find(k);
            csv += it == r.scalars.end() ? ",nan,nan" : "," + num17(it->second.mean) + "," + num17(it->second.err);
        }
        for (const auto& k : det) {
            const auto it = r.detectors.find(k);
            csv += it == r.detectors.end() ? ",nan" : "," + num17(it->second);
        }
        csv += "\n";
    }
    write_text(out / "scalars.csv", csv);
    if (sc.count("r_mean") && rs.size() > 1) {
        std::string s = "# ysyk-plot 1\npanel r_mean\ntitle \"mean gap ratio\"\n";
        s += std::string("xaxis log \"") + (rc.axis_is_ratio ? "ratio[1]" : "omega0[J]") + "\"\nyaxis linear \"r[1]\"\n";
        s += "series \"scalars.csv\" x=1 y=r_mean err=r_mean_err label=\"<r>\"\n";
        s += "hline 0.38629436111989057 label=\"Poisson\"\nhline 0.5996 label=\"GUE\"\nend\n";
        write_text(out / "r_mean.plot", s);
    }
}

// ---- checks ----------------------------------------------------------------

const std::set<std::string>& check_keys() {
    static const std::set<std::string> keys = {"check.r_mean", "check.r_tol", "check.plateau_tol", "check.F_late",
                                               "check.F_tol"};
    return keys;
}

double pick(const std::vector<double>& v, std::size_t p, const std::string& key) {
    if (v.size() == 1) return v[0];
    if (p < v.size()) return v[p];
    throw ConfigError(key, "needs one value or one per sweep point");
}

std::vector<CheckLine> run_checks(const Config& checks, const RunConfig& rc, const std::vector<EnsembleResult>& rs) {
    checks.require_known(check_keys());
    std::vector<CheckLine> lines;
    const double inv_d = 1.0 / static_cast<double>(dimension(rc));
    for (std::size_t p = 0; p < rs.size(); ++p) {
        const auto& r = rs[p];
        const std::string at = "[" + axis_label(rc) + " = " + num(rc.omega0[p]) + "] ";
        if (const auto it = r.curves.find("dos"); it != r.curves.end()) {
            const auto& c = it->second;
            double integral = 0.0;
            const double w = c.x.size() > 1 ? c.x[1] - c.x[0] : 0.0;
            for (double y : c.mean) integral += y * w;
            lines.push_back({at + "dos_normalized", std::abs(integral - 1.0) < 1e-9, "integral " + num17(integral)});
        }
        if (const auto it = r.scalars.find("r_mean"); it != r.scalars.end() && checks.has("check.r_mean")) {
            const double want = pick(checks.get_doubles("check.r_mean"), p, "check.r_mean");
            const double tol = checks.get_double("check.r_tol", 0.03);
            const double got = it->second.mean;
            lines.push_back({at + "r_mean", std::abs(got - want) <= tol,
                             "<r> = " + num(got) + " +- " + num(it->second.err) + ", want " + num(want) + " +- " + num(tol)});
        }
        if (const auto it = r.curves.find("sff"); it != r.curves.end()) {
            const auto& c = it->second;
            if (!c.x.empty() && c.x.front() == 0.0)
                lines.push_back({at + "sff_at_zero", std::abs(c.mean.front() - 1.0) < 1e-12, "K(0) = " + num17(c.mean.front())});
            const double tol = checks.get_double("check.plateau_tol", 0.2);
            const double kpl = r.detectors.at("K_plateau");
            lines.push_back({at + "sff_plateau", std::abs(kpl / inv_d - 1.0) <= tol,
                             "late-time K = " + num(kpl) + ", 1/D = " + num(inv_d) + ", tol " + num(100.0 * tol) + "%"});
        }
        if (const auto it = r.curves.find("otoc"); it != r.curves.end()) {
            const auto& c = it->second;
            if (!c.x.empty() && c.x.front() == 0.0)
                lines.push_back({at + "otoc_at_zero", std::abs(c.mean.front() - 1.0) < 1e-9, "F(0) = " + num17(c.mean.front())});
            if (checks.has("check.F_late")) {
                const double want = pick(checks.get_doubles("check.F_late"), p, "check.F_late");
                const double tol = checks.get_double("check.F_tol", 0.05);
                const double got = r.detectors.at("F_late");
                lines.push_back({at + "otoc_late", std::abs(got - want) <= tol,
                                 "late-time F = " + num(got) + ", want " + num(want) + " +- " + num(tol)});
            }
        }
    }
    return lines;
}

int report_checks(const std::vector<CheckLine>& lines, const fs::path& out) {
    bool all = true;
    json j = json::array();
    for (const auto& l : lines) {
        std::printf("%s %s: %s\n", l.pass ? "PASS" : "FAIL", l.name.c_str(), l.detail.c_str());
        j.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
        all = all && l.pass;
    }
    if (!out.empty()) write_text(out / "check.json", json{{"pass", all}, {"checks", j}}.dump(2) + "\n");
    return all ? 0 : kExitCheck;
}

// ---- subcommands -----------------------------------------------------------

int cmd_run(const Common& o, const std::string& cmd, const std::set<std::string>& diags) {
    Config c = load_config(o);
    const Config checks = take_section(c, "check");
    if (o.seed) c.set("seed", std::to_string(*o.seed));
    RunConfig rc = run_config_from(c);
    rc.diagnostics.insert(diags.begin(), diags.end());
    if (rc.diagnostics.empty()) throw ConfigError("diagnostics", "sweep needs at least one of dos, gapratio, sff, otoc");
    if (rc.diagnostics.count("sff") && rc.sff_times.empty()) throw ConfigError("sff.t_max", "no sff time grid given");
    if (rc.diagnostics.count("otoc") && rc.otoc_times.empty()) throw ConfigError("otoc.t_max", "no otoc time grid given");
    rc.threads = o.threads > 0 ? o.threads : env_threads();
    checks.require_known(check_keys());

    const fs::path out = o.out.empty() ? fs::path("ysyk-" + cmd) : fs::path(o.out);
    RunOptions opt;
    opt.out_dir = out.string();
    const auto rs = sweep(rc, opt);
    write_text(out / "config.json", to_config(rc).canonical_json() + "\n");
    write_plots(out, rc, rs);
    write_scalars(out, rc, rs);
    std::fprintf(stderr, "%s: %zu point(s) written to %s\n", cmd.c_str(), rs.size(), out.string().c_str());
    return o.check ? report_checks(run_checks(checks, rc, rs), out) : 0;
}

const std::set<std::string>& rescale_keys() {
    static const std::set<std::string> keys = {"params.N", "params.M", "params.N_b", "params.g", "params.J",
                                               "params.omega0", "rescale.large_omega", "rescale.c_otoc_samples",
                                               "seed"};
    return keys;
}

int cmd_rescale(const Common& o) {
    Config c = load_config(o);
    if (o.seed) c.set("seed", std::to_string(*o.seed));
    c.require_known(rescale_keys());
    MomentParams p;
    p.N = static_cast<int>(c.get_int("params.N", p.N));
    p.M = static_cast<int>(c.get_int("params.M", p.M));
    p.N_b = static_cast<int>(c.get_int("params.N_b", p.N_b));
    p.g = c.get_double("params.g", p.g);
    p.J = c.get_double("params.J", p.J);
    p.omega0 = c.get_double("params.omega0", p.omega0);
    const bool large = c.get_bool("rescale.large_omega", p.omega0 > p.g);
    const long long samples = c.get_int("rescale.c_otoc_samples", 0);
    if (samples < 0) throw ConfigError("rescale.c_otoc_samples", "must be >= 0");

    json j;
    std::optional<double> c_otoc;
    if (large && samples > 0) {
        COtocOptions co;
        co.g = p.g;
        const auto r = c_otoc_large_omega(p.N, p.M, p.omega0, static_cast<std::size_t>(samples),
                                          static_cast<std::uint64_t>(c.get_int("seed", 0)), co);
        c_otoc = r.value;
        j["c_otoc"] = {{"value", r.value}, {"err", r.err}, {"samples", r.n_samples}, {"warning", r.warning},
                       {"message", r.message}};
        if (r.drift) j["c_otoc"]["drift"] = {{"value", *r.drift}, {"err", r.drift_err}};
    }
    const RescaleFactors f = rescale_factors(p, large, c_otoc);
    j["regime"] = f.regime;
    j["alpha_sff"] = f.alpha_sff;
    j["alpha_otoc"] = f.alpha_otoc;
    if (f.c_sff) j["c_sff"] = *f.c_sff;
    if (!large) j["alpha_sff_simplified"] = alpha_small_omega_simplified(p.N_b, p.g, p.omega0);
    j["params"] = {{"N", p.N}, {"M", p.M}, {"N_b", p.N_b}, {"g", p.g}, {"J", p.J}, {"omega0", p.omega0}};
    const std::string text = j.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!o.out.empty()) write_text(fs::path(o.out) / "rescale.json", text);
    return 0;
}

const std::set<std::string>& feasibility_keys() {
    static const std::set<std::string> keys = {"Omega_d", "Omega_m", "Delta_da", "Delta_cd", "kappa", "Gamma",
                                               "trap_freq", "w0", "m_at", "margin"};
    return keys;
}

double quantity(const Config& c, const std::string& key) {
    try {
        return parse_quantity(c.get_string(key));
    } catch (const InvalidArgument& e) {
        throw ConfigError(key, e.what());
    }
}

int cmd_feasibility(const Common& o) {
    const Config c = load_config(o);
    c.require_known(feasibility_keys());
    CavityParams p;
    p.Omega_d = quantity(c, "Omega_d");
    p.Omega_m = quantity(c, "Omega_m");
    p.Delta_da = quantity(c, "Delta_da");
    p.Delta_cd = quantity(c, "Delta_cd");
    p.kappa = quantity(c, "kappa");
    p.Gamma = quantity(c, "Gamma");
    p.trap_freq = quantity(c, "trap_freq");
    p.w0 = quantity(c, "w0");
    if (c.has("m_at")) p.m_at = quantity(c, "m_at");
    const FeasibilityReport r = feasibility_report(p, c.get_double("margin", 5.0));
    std::fputs(report_table(r).c_str(), stdout);
    const fs::path out = o.out.empty() ? fs::path("ysyk-feasibility") : fs::path(o.out);
    write_text(out / "feasibility.json", report_json(r) + "\n");
    std::fprintf(stderr, "feasibility: report written to %s\n", (out / "feasibility.json").string().c_str());
    if (!o.check) return 0;
    return report_checks({{"hierarchy_ysyk", r.ysyk.pass, "all ratios above the margin"},
                          {"hierarchy_syk4", r.syk4.pass, "all ratios above the margin"},
                          {"geometry", r.geom.in_window, "zeta = " + num(r.geom.zeta)}},
                         out);
}

// Suite: "all", "none", or a comma list of criterion numbers. "fail" adds a
// criterion that always fails, for exercising the exit path.
int cmd_check(const std::string& suite, const std::string& out) {
    using namespace ysyk::acceptance;
    std::vector<Criterion> selected;
    static const Criterion forced{0, "forced_failure", [] { return Outcome{false, "fixture", 0.0}; }};
    if (suite == "all") {
        selected = criteria();
    } else if (suite != "none" && !suite.empty()) {
        std::stringstream ss(suite);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok.erase(0, tok.find_first_not_of(' '));
            tok.erase(tok.find_last_not_of(' ') + 1);
            if (tok == "fail") {
                selected.push_back(forced);
                continue;
            }
            bool found = false;
            for (const auto& c : criteria())
                if (tok == std::to_string(c.id) || tok == c.name) {
                    selected.push_back(c);
                    found = true;
                }
            if (!found) throw ConfigError("suite", "unknown criterion '" + tok + "'");
        }
    }
    bool all = true;
    json j = json::array();
    for (const auto& c : selected) {
        const Outcome r = evaluate(c);
        std::fprintf(stderr, "%s [%d] %s: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(),
                     r.seconds);
        j.push_back({{"id", c.id}, {"name", c.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        all = all && r.pass;
    }
    const std::string text = json{{"pass", all}, {"criteria", j}}.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!out.empty()) write_text(fs::path(out) / "check.json", text);
    return all ? 0 : kExitCheck;
}

void add_common(CLI::App* sub, Common& o, bool run_flags) {
    sub->add_option("--config", o.config, "config file");
    sub->add_option("--set", o.sets, "override, key=value (repeatable)");
    sub->add_option("--out", o.out, "output directory");
    if (run_flags) {
        sub->add_option("--threads", o.threads, "worker threads (default: $YSYK_THREADS or 1)")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "base seed");
    }
    sub->add_flag("--check", o.check, "verify the results and exit 3 on failure");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ysyk: exact diagonalization of Yukawa-SYK models"};
    app.require_subcommand(1);
    Common o;
    std::string suite = "all";

    struct Run {
        const char* name;
        const char* help;
        std::set<std::string> diags;
    };
    const std::vector<Run> runs = {
        {"spectrum", "density of states", {"dos"}},
        {"gapratio", "adjacent-gap ratio statistics", {"gapratio"}},
        {"sff", "spectral form factor", {"sff"}},
        {"otoc", "out-of-time-order correlator", {"otoc"}},
        {"sweep", "run the diagnostics listed in the config", {}},
    };
    std::vector<CLI::App*> run_subs;
    for (const auto& r : runs) {
        auto* s = app.add_subcommand(r.name, r.help);
        add_common(s, o, true);
        run_subs.push_back(s);
    }
    auto* rescale = app.add_subcommand("rescale", "print time-rescaling factors as JSON");
    add_common(rescale, o, true);
    auto* feas = app.add_subcommand("feasibility", "cavity parameter estimates");
    add_common(feas, o, false);
    auto* check = app.add_subcommand("check", "run the acceptance suite");
    check->add_option("--suite", suite, "all, none, or a comma list of criterion numbers or names");
    check->add_option("--out", o.out, "output directory for check.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        for (std::size_t k = 0; k < runs.size(); ++k)
            if (run_subs[k]->parsed()) return cmd_run(o, runs[k].name, runs[k].diags);
        if (rescale->parsed()) return cmd_rescale(o);
        if (feas->parsed()) return cmd_feasibility(o);
        if (check->parsed()) return cmd_check(suite, o.out);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitRuntime;
}
