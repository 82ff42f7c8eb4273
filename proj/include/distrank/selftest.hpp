#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace distrank {

struct SelfTestReport {
    struct Suite {
        std::string name;
        bool passed = false;
        std::string detail;  // non-empty on failure
    };
    std::vector<Suite> suites;

    bool all_passed() const {
        for (const auto& s : suites)
            if (!s.passed) return false;
        return true;
    }
};

// Exact-identity checks that must hold on any machine: merge-sort inversion
// counts vs the quadratic definition, fast vs naive statistic cells and
// totals, relabeling vs recomputing rank tables, dcov vs a direct evaluation
// of its definition.  Seed only varies the sampled inputs.
SelfTestReport run_selftest(std::uint64_t seed);

void print_report(const SelfTestReport& report, std::ostream& out);

}  // namespace distrank
