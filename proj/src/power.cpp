#include "distrank/power.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "distrank/dcov.hpp"
#include "distrank/hhg.hpp"
#include "distrank/parallel.hpp"
#include "distrank/rng.hpp"

namespace distrank {

Method method_from_string(std::string_view name) {
    if (name == "hhg" || name == "hhg-pearson") return Method::HhgPearson;
    if (name == "hhg-lr") return Method::HhgLR;
    if (name == "dcov") return Method::Dcov;
    throw std::invalid_argument("unknown method: " + std::string(name));
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::HhgPearson: return "HHG-Pearson";
        case Method::HhgLR: return "HHG-LR";
        case Method::Dcov: return "dCov";
    }
    return "?";
}

TableFormat table_format_from_string(std::string_view name) {
    if (name == "tsv") return TableFormat::Tsv;
    if (name == "json") return TableFormat::Json;
    if (name == "markdown" || name == "md") return TableFormat::Markdown;
    throw std::invalid_argument("unknown table format: " + std::string(name));
}

namespace {

bool run_single_test(Method method, const Dataset& x, const Dataset& y,
                     Metric metric, const PermutationPlan& plan, double alpha) {
    const DistanceMatrix dist_x = distance_matrix(x, metric);
    const DistanceMatrix dist_y = distance_matrix(y, metric);
    double p;
    if (method == Method::Dcov) {
        p = dcov_pvalue(dist_x, dist_y, plan).p_value;
    } else {
        const StatKind kind = method == Method::HhgPearson
                                  ? StatKind::PearsonChiSquare
                                  : StatKind::LikelihoodRatio;
        const RankTable rank_x = rank_table(dist_x);
        const RankTable rank_y = rank_table(dist_y);
        p = permutation_pvalue(rank_x, rank_y, kind, plan).p_value;
    }
    return p <= alpha;
}

}  // namespace

std::vector<PowerRow> estimate_power_with(const PowerSpec& spec,
                                          std::string_view label,
                                          const PairGenerator& generate_pair) {
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0, 1)");
    if (spec.simulations < 1)
        throw std::invalid_argument("need at least one simulation");
    if (spec.sample_sizes.empty())
        throw std::invalid_argument("no sample sizes given");
    if (spec.methods.empty()) throw std::invalid_argument("no methods given");

    const std::uint64_t label_hash = fnv1a64(label);
    std::vector<PowerRow> rows;
    for (int n : spec.sample_sizes) {
        for (Method method : spec.methods) {
            const auto start = std::chrono::steady_clock::now();
            const std::uint64_t method_id = static_cast<std::uint64_t>(method);
            std::vector<char> rejected(spec.simulations, 0);
            parallel_for(spec.simulations, spec.threads, [&](std::size_t sim) {
                const std::uint64_t base = derive_stream(
                    spec.plan.seed,
                    {label_hash, static_cast<std::uint64_t>(n), method_id, sim});
                const auto [x, y] = generate_pair(n, derive_stream(base, {1}));
                PermutationPlan plan = spec.plan;
                plan.seed = derive_stream(base, {2});
                rejected[sim] = run_single_test(method, x, y, spec.metric, plan,
                                                spec.alpha)
                                    ? 1
                                    : 0;
            });
            int count = 0;
            for (char r : rejected) count += r;
            PowerRow row;
            row.scenario = std::string(label);
            row.method = std::string(to_string(method));
            row.n = n;
            row.power = static_cast<double>(count) / spec.simulations;
            row.se = std::sqrt(row.power * (1.0 - row.power) / spec.simulations);
            row.seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
            if (spec.progress)
                std::cerr << row.scenario << " " << row.method << " n=" << row.n
                          << " power=" << row.power << " (" << row.seconds
                          << "s)\n";
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end(), [](const PowerRow& a, const PowerRow& b) {
        return std::tie(a.scenario, a.method, a.n) <
               std::tie(b.scenario, b.method, b.n);
    });
    return rows;
}

std::vector<PowerRow> estimate_power(const PowerSpec& spec) {
    const Scenario scenario = spec.scenario;
    return estimate_power_with(
        spec, scenario.label(), [scenario](int n, std::uint64_t seed) {
            return generate(scenario, n, seed);
        });
}

namespace {

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

std::string emit_table(const std::vector<PowerRow>& rows, TableFormat format) {
    if (rows.empty()) throw std::invalid_argument("no rows to emit");

    std::vector<PowerRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(),
              [](const PowerRow& a, const PowerRow& b) {
                  return std::tie(a.scenario, a.method, a.n) <
                         std::tie(b.scenario, b.method, b.n);
              });

    switch (format) {
        case TableFormat::Tsv: {
            std::ostringstream out;
            out << "scenario\tmethod\tn\tpower\tse\tseconds\n";
            for (const auto& r : sorted)
                out << r.scenario << '\t' << r.method << '\t' << r.n << '\t'
                    << format_fixed(r.power, 4) << '\t' << format_fixed(r.se, 4)
                    << '\t' << format_fixed(r.seconds, 3) << '\n';
            return out.str();
        }
        case TableFormat::Json: {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : sorted) {
                arr.push_back({{"scenario", r.scenario},
                               {"method", r.method},
                               {"n", r.n},
                               {"power", r.power},
                               {"se", r.se},
                               {"seconds", r.seconds}});
            }
            return arr.dump(2) + "\n";
        }
        case TableFormat::Markdown: {
            // One table per scenario: rows are sample sizes, columns methods,
            // cells "power (se*100)".
            std::vector<std::string> methods;
            std::vector<int> sizes;
            for (const auto& r : sorted) {
                if (std::find(methods.begin(), methods.end(), r.method) ==
                    methods.end())
                    methods.push_back(r.method);
                if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end())
                    sizes.push_back(r.n);
            }
            std::sort(methods.begin(), methods.end());
            std::sort(sizes.begin(), sizes.end());
            std::map<std::tuple<std::string, std::string, int>, const PowerRow*>
                index;
            std::vector<std::string> scenarios;
            for (const auto& r : sorted) {
                index[{r.scenario, r.method, r.n}] = &r;
                if (std::find(scenarios.begin(), scenarios.end(), r.scenario) ==
                    scenarios.end())
                    scenarios.push_back(r.scenario);
            }
            std::ostringstream out;
            for (const auto& scenario : scenarios) {
                out << "### " << scenario << "\n\n";
                out << "| N |";
                for (const auto& m : methods) out << ' ' << m << " |";
                out << "\n|---|";
                for (std::size_t i = 0; i < methods.size(); ++i) out << "---|";
                out << '\n';
                for (int n : sizes) {
                    bool any = false;
                    for (const auto& m : methods)
                        if (index.count({scenario, m, n})) any = true;
                    if (!any) continue;
                    out << "| " << n << " |";
                    for (const auto& m : methods) {
                        auto it = index.find({scenario, m, n});
                        if (it == index.end()) {
                            out << " - |";
                        } else {
                            out << ' ' << format_fixed(it->second->power, 3)
                                << " (" << format_fixed(it->second->se * 100, 1)
                                << ") |";
                        }
                    }
                    out << '\n';
                }
                out << '\n';
            }
            return out.str();
        }
    }
    throw std::invalid_argument("unknown table format");
}

std::vector<PowerRow> parse_table_json(const std::string& text) {
    const nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<PowerRow> rows;
    for (const auto& item : arr) {
        PowerRow r;
        r.scenario = item.at("scenario").get<std::string>();
        r.method = item.at("method").get<std::string>();
        r.n = item.at("n").get<int>();
        r.power = item.at("power").get<double>();
        r.se = item.at("se").get<double>();
        r.seconds = item.at("seconds").get<double>();
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace distrank
