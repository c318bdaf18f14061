// Copyright 2026 The ysyk Authors
// SPDX-License-Identifier: Apache-2.0

// Desk-scale acceptance suite. One line per criterion:
//   PASS|FAIL [k] name: measured values and targets
// Exit status is nonzero when any selected criterion fails.

#include "criteria.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <vector>

using namespace ysyk::acceptance;

int main(int argc, char** argv) {
    CLI::App app{"ysyk acceptance suite"};
    std::vector<int> selected;
    bool list = false;
    app.add_option("-c,--criterion", selected, "criterion number (repeatable); default all")->check(CLI::Range(1, 13));
    app.add_flag("--list", list, "print criterion names and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& c : criteria()) std::printf("%d %s\n", c.id, c.name);
        return 0;
    }
    int failed = 0;
    for (const auto& c : criteria()) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        const Outcome o = evaluate(c);
        std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), o.seconds);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
