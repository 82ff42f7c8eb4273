#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "distrank/permutation.hpp"
#include "distrank/scenarios.hpp"

namespace distrank {

enum class Method { HhgPearson, HhgLR, Dcov };

Method method_from_string(std::string_view name);
std::string_view to_string(Method m);

struct PowerSpec {
    Scenario scenario;
    std::vector<int> sample_sizes;
    std::vector<Method> methods;
    double alpha = 0.05;
    int simulations = 200;
    PermutationPlan plan;       // plan.seed is the master seed
    Metric metric = Metric::L2;
    unsigned threads = 1;
    bool progress = false;      // per-row notes on stderr
};

struct PowerRow {
    std::string scenario;
    std::string method;
    int n = 0;
    double power = 0.0;
    double se = 0.0;
    double seconds = 0.0;

    bool operator==(const PowerRow&) const = default;
};

enum class TableFormat { Tsv, Json, Markdown };

TableFormat table_format_from_string(std::string_view name);

// Generator signature for scenarios outside the built-in list (tests use
// this for degenerate cases).
using PairGenerator =
    std::function<std::pair<Dataset, Dataset>(int n, std::uint64_t seed)>;

// Monte-Carlo power estimate: for each (n, method), run spec.simulations
// seeded simulations, reject when p <= alpha.  Per-simulation seeds derive
// from (master seed, scenario label, n, method, sim index), so results do
// not depend on scheduling.  Rows come back sorted by (scenario, method, n).
std::vector<PowerRow> estimate_power(const PowerSpec& spec);
std::vector<PowerRow> estimate_power_with(const PowerSpec& spec,
                                          std::string_view label,
                                          const PairGenerator& generate_pair);

std::string emit_table(const std::vector<PowerRow>& rows, TableFormat format);
std::vector<PowerRow> parse_table_json(const std::string& text);

}  // namespace distrank
