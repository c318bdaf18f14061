// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/feasibility.hpp"

#include "ysyk/common.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace ysyk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sq(double x) { return x * x; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

HierarchyCheck make_check(std::string name, double big, double small, double margin) {
    HierarchyCheck c;
    c.name = std::move(name);
    c.ratio = small == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(big) / std::abs(small);
    c.required = margin;
    c.pass = c.ratio >= margin;
    return c;
}

}  // namespace

double mhz(double value) { return kTwoPi * value * 1e6; }

double parse_quantity(const std::string& text) {
    const std::string s = trim(text);
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse quantity '" + text + "'");
    }
    const std::string unit = trim(s.substr(pos));
    static const std::map<std::string, double> scale = {
        {"", 1.0},
        {"Hz", kTwoPi},
        {"kHz", kTwoPi * 1e3},
        {"MHz", kTwoPi * 1e6},
        {"GHz", kTwoPi * 1e9},
        {"rad/s", 1.0},
        {"m", 1.0},
        {"mm", 1e-3},
        {"um", 1e-6},
        {"nm", 1e-9},
        {"kg", 1.0},
        {"u", kAtomicMass},
    };
    const auto it = scale.find(unit);
    if (it == scale.end()) throw InvalidArgument("unknown unit '" + unit + "' in '" + text + "'");
    return v * it->second;
}

Hierarchy check_hierarchy(const CavityParams& p, Regime regime, double margin) {
    if (margin < 1.0) throw InvalidArgument("check_hierarchy: margin must be >= 1");
    Hierarchy h;
    h.checks.push_back(make_check("|Delta_da|/|Omega_d|", p.Delta_da, p.Omega_d, margin));
    h.checks.push_back(make_check("|Omega_d|/|Omega_m|", p.Omega_d, p.Omega_m, margin));
    if (regime == Regime::syk4) {
        const double scale = std::abs(p.Omega_d * p.Omega_m / p.Delta_da);
        h.checks.push_back(make_check("|Delta_cd|/(|Omega_d||Omega_m|/|Delta_da|)", p.Delta_cd, scale, margin));
    }
    h.pass = true;
    for (const auto& c : h.checks) h.pass = h.pass && c.pass;
    return h;
}

Couplings effective_couplings(const CavityParams& p) {
    Couplings c;
    const double num = sq(p.Omega_d) * sq(p.Omega_m) / sq(p.Delta_da);
    c.yukawa_scale = std::sqrt(num);
    c.J_lossless = num / std::abs(p.Delta_cd);
    c.J = num / std::hypot(p.Delta_cd, 0.5 * p.kappa);
    return c;
}

Dissipation dissipation(const CavityParams& p) {
    Dissipation d;
    const double od2 = sq(p.Omega_d);
    const double om2 = sq(p.Omega_m);
    const double cav = sq(p.Delta_cd) + sq(0.5 * p.kappa);
    const double atom = sq(p.Delta_da) + sq(0.5 * p.Gamma);
    d.Gamma_tilde = p.Gamma * od2 / atom;
    d.kappa_tilde = p.kappa * od2 * om2 / (sq(p.Delta_da) * cav);
    d.kappa_tilde_local = 0.25 * p.kappa * od2 * om2 / (cav * atom);
    d.eta = 4.0 * om2 / (p.kappa * p.Gamma);

    const Couplings c = effective_couplings(p);
    d.merit_ysyk = sq(c.yukawa_scale) / (p.kappa * d.Gamma_tilde);
    d.merit_syk4 = sq(c.J) / (d.kappa_tilde * d.Gamma_tilde);
    return d;
}

double zeta_from_x0(double x0, double w0) { return std::numbers::sqrt2 * x0 / w0; }

Geometry geometry(const CavityParams& p) {
    if (p.trap_freq <= 0.0 || p.w0 <= 0.0 || p.m_at <= 0.0)
        throw InvalidArgument("geometry: trap_freq, w0 and m_at must be positive");
    Geometry g;
    g.x0 = std::sqrt(kHbar / (p.m_at * p.trap_freq));
    g.zeta = zeta_from_x0(g.x0, p.w0);
    g.in_window = g.zeta >= 0.65 && g.zeta <= 0.98;
    return g;
}

FeasibilityReport feasibility_report(const CavityParams& p, double margin) {
    FeasibilityReport r;
    r.params = p;
    r.ysyk = check_hierarchy(p, Regime::ysyk, margin);
    r.syk4 = check_hierarchy(p, Regime::syk4, margin);
    r.couplings = effective_couplings(p);
    r.rates = dissipation(p);
    if (p.trap_freq > 0.0 && p.w0 > 0.0) r.geom = geometry(p);
    return r;
}

namespace {

void put_freq(nlohmann::ordered_json& j, const std::string& key, double w) {
    j[key] = w;
    j[key + "_over_2pi_Hz"] = w / kTwoPi;
}

nlohmann::ordered_json hierarchy_json(const Hierarchy& h) {
    nlohmann::ordered_json out;
    out["pass"] = h.pass;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : h.checks)
        arr.push_back({{"name", c.name}, {"ratio", c.ratio}, {"required", c.required}, {"pass", c.pass}});
    out["checks"] = arr;
    return out;
}

}  // namespace

std::string report_json(const FeasibilityReport& r) {
    nlohmann::ordered_json j;
    auto& in = j["params"];
    put_freq(in, "Omega_d", r.params.Omega_d);
    put_freq(in, "Omega_m", r.params.Omega_m);
    put_freq(in, "Delta_da", r.params.Delta_da);
    put_freq(in, "Delta_cd", r.params.Delta_cd);
    put_freq(in, "kappa", r.params.kappa);
    put_freq(in, "Gamma", r.params.Gamma);
    put_freq(in, "trap_freq", r.params.trap_freq);
    in["w0_m"] = r.params.w0;
    in["m_at_kg"] = r.params.m_at;

    j["hierarchy"]["ysyk"] = hierarchy_json(r.ysyk);
    j["hierarchy"]["syk4"] = hierarchy_json(r.syk4);

    auto& c = j["couplings"];
    put_freq(c, "g_over_sqrt2w0", r.couplings.yukawa_scale);
    put_freq(c, "J_eff", r.couplings.J);
    put_freq(c, "J_lossless", r.couplings.J_lossless);

    auto& d = j["dissipation"];
    put_freq(d, "Gamma_tilde", r.rates.Gamma_tilde);
    put_freq(d, "kappa_tilde", r.rates.kappa_tilde);
    put_freq(d, "kappa_tilde_local", r.rates.kappa_tilde_local);
    d["eta"] = r.rates.eta;
    d["merit_ysyk"] = r.rates.merit_ysyk;
    d["merit_syk4"] = r.rates.merit_syk4;
    d["eta_over_4"] = r.rates.eta / 4.0;

    auto& g = j["geometry"];
    g["x0_m"] = r.geom.x0;
    g["zeta"] = r.geom.zeta;
    g["zeta_in_window"] = r.geom.in_window;
    return j.dump(2);
}

std::string report_table(const FeasibilityReport& r) {
    std::ostringstream os;
    char buf[160];
    auto row = [&](const char* name, double w) {
        std::snprintf(buf, sizeof buf, "  %-22s %14.6g rad/s   %12.6g Hz (x 2pi)\n", name, w, w / kTwoPi);
        os << buf;
    };
    auto hier = [&](const char* name, const Hierarchy& h) {
        os << name << (h.pass ? " PASS\n" : " FAIL\n");
        for (const auto& c : h.checks) {
            std::snprintf(buf, sizeof buf, "  %-44s %10.4g  (need >= %g) %s\n", c.name.c_str(), c.ratio, c.required,
                          c.pass ? "ok" : "VIOLATED");
            os << buf;
        }
    };
    hier("hierarchy ysyk", r.ysyk);
    hier("hierarchy syk4", r.syk4);
    os << "couplings\n";
    row("g/sqrt(2 omega0)", r.couplings.yukawa_scale);
    row("J", r.couplings.J);
    row("J (kappa = 0)", r.couplings.J_lossless);
    os << "dissipation\n";
    row("Gamma_tilde", r.rates.Gamma_tilde);
    row("kappa_tilde", r.rates.kappa_tilde);
    row("kappa_tilde (local)", r.rates.kappa_tilde_local);
    std::snprintf(buf, sizeof buf, "  %-22s %14.6g\n  %-22s %14.6g\n  %-22s %14.6g\n", "eta", r.rates.eta,
                  "g^2/(kappa Gamma~)", r.rates.merit_ysyk, "J^2/(kappa~ Gamma~)", r.rates.merit_syk4);
    os << buf;
    if (r.geom.x0 > 0.0) {
        std::snprintf(buf, sizeof buf, "geometry\n  %-22s %14.6g um\n  %-22s %14.6g %s\n", "x0", r.geom.x0 * 1e6,
                      "zeta", r.geom.zeta, r.geom.in_window ? "(in [0.65, 0.98])" : "(outside [0.65, 0.98])");
        os << buf;
    }
    return os.str();
}

}  // namespace ysyk
