// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

#include "ysyk/config.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ysyk {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(v);
    while (std::getline(is, cur, ','))
        if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* b = s.data();
    const char* e = b + s.size();
    if (*b == '+') ++b;
    const auto r = std::from_chars(b, e, out);
    return r.ec == std::errc{} && r.ptr == e;
}

nlohmann::ordered_json typed(const std::string& s) {
    double d = 0.0;
    if (parse_number(s, d)) {
        long long i = 0;
        const auto r = std::from_chars(s.data(), s.data() + s.size(), i);
        if (r.ec == std::errc{} && r.ptr == s.data() + s.size()) return i;
        return d;
    }
    if (s == "true") return true;
    if (s == "false") return false;
    return s;
}

}  // namespace

ConfigError::ConfigError(const std::string& k, const std::string& what)
    : std::runtime_error(k.empty() ? what : "config key '" + k + "': " + what), key(k) {}

Config Config::parse(const std::string& text, const std::string& source) {
    Config c;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("", where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("", where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("", where + ": empty key");
        c.set(section.empty() ? key : section + "." + key, trim(line.substr(eq + 1)));
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

void Config::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("", "override '" + assignment + "' is not key=value");
    const std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) throw ConfigError("", "override '" + assignment + "' has an empty key");
    set(key, trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "missing");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    double d = 0.0;
    const std::string v = get_string(key);
    if (!parse_number(v, d)) throw ConfigError(key, "expected a number, got '" + v + "'");
    return d;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    long long i = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), i);
    if (v.empty() || r.ec != std::errc{} || r.ptr != v.data() + v.size())
        throw ConfigError(key, "expected an integer, got '" + v + "'");
    return i;
}

long long Config::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key, "expected true/false, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& s : split_list(get_string(key))) {
        double d = 0.0;
        if (!parse_number(s, d)) throw ConfigError(key, "expected a list of numbers, got '" + s + "'");
        out.push_back(d);
    }
    return out;
}

std::vector<std::string> Config::get_strings(const std::string& key) const {
    std::vector<std::string> out;
    for (auto& s : split_list(get_string(key))) out.push_back(std::move(s));
    return out;
}

void Config::require_known(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : values_)
        if (!allowed.count(k)) throw ConfigError(k, "unknown key");
}

std::string Config::canonical_json() const {
    nlohmann::ordered_json root = nlohmann::ordered_json::object();
    for (const auto& [key, value] : values_) {
        nlohmann::ordered_json* node = &root;
        std::size_t start = 0;
        for (;;) {
            const auto dot = key.find('.', start);
            const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            if (dot == std::string::npos) {
                if (node->contains(part)) throw ConfigError(key, "conflicts with a section of the same name");
                if (value.find(',') != std::string::npos) {
                    auto arr = nlohmann::ordered_json::array();
                    for (const auto& s : split_list(value)) arr.push_back(typed(s));
                    (*node)[part] = arr;
                } else {
                    (*node)[part] = typed(value);
                }
                break;
            }
            auto& child = (*node)[part];
            if (!child.is_null() && !child.is_object()) throw ConfigError(key, "conflicts with a scalar key");
            if (child.is_null()) child = nlohmann::ordered_json::object();
            node = &child;
            start = dot + 1;
        }
    }
    return root.dump(2);
}

std::string Config::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_json())));
    return buf;
}

std::uint64_t fnv1a64(const std::string& s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace ysyk
