// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Hand-editable key-value configuration.
 *
 * Format:
 *
 *     # comment
 *     model = ysyk
 *     [params]          # section; following keys become params.<key>
 *     N = 8
 *     omega0 = 0.01, 0.5, 2    # lists are comma separated
 *
 * Inline comments start at '#'. Later assignments override earlier ones;
 * overrides given as "key=value" are applied last.
 */

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ysyk {

// Raised for unknown keys, malformed lines and bad values; names the key.
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& key, const std::string& what);
    std::string key;
};

class Config {
public:
    Config() = default;

    [[nodiscard]] static Config parse(const std::string& text, const std::string& source = "<string>");
    [[nodiscard]] static Config load(const std::string& path);

    // "key=value"
    void apply_override(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    [[nodiscard]] bool has(const std::string& key) const;
    [[nodiscard]] std::string get_string(const std::string& key) const;
    [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;
    [[nodiscard]] double get_double(const std::string& key) const;
    [[nodiscard]] double get_double(const std::string& key, double fallback) const;
    [[nodiscard]] long long get_int(const std::string& key) const;
    [[nodiscard]] long long get_int(const std::string& key, long long fallback) const;
    [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
    [[nodiscard]] std::vector<double> get_doubles(const std::string& key) const;
    [[nodiscard]] std::vector<std::string> get_strings(const std::string& key) const;

    // Throws ConfigError on the first key not in `allowed`.
    void require_known(const std::set<std::string>& allowed) const;

    // Sorted keys, numbers and lists typed, nested by section.
    [[nodiscard]] std::string canonical_json() const;
    // hash of canonical_json(), 16 hex digits
    [[nodiscard]] std::string hash() const;

    [[nodiscard]] const std::map<std::string, std::string>& entries() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

[[nodiscard]] std::uint64_t fnv1a64(const std::string& s) noexcept;

}  // namespace ysyk
