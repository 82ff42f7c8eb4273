// Command-line front end: independence tests on CSV pairs, scenario power
// studies, self-verification, and statistic timing.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 selftest failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "distrank/dataset.hpp"
#include "distrank/dcov.hpp"
#include "distrank/hhg.hpp"
#include "distrank/parallel.hpp"
#include "distrank/permutation.hpp"
#include "distrank/power.hpp"
#include "distrank/rng.hpp"
#include "distrank/scenarios.hpp"
#include "distrank/selftest.hpp"

namespace {

using namespace distrank;

unsigned env_default_threads() {
    if (const char* env = std::getenv("DISTRANK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return default_thread_count();
}

char parse_delimiter(const std::string& text) {
    if (text == "tab" || text == "\\t") return '\t';
    if (text.size() != 1)
        throw CLI::ValidationError("--delimiter expects a single character or 'tab'");
    return text[0];
}

struct ScenarioFlags {
    std::string name = "four_clouds";
    int m1 = 2;
    double beta1 = 1.0;
    double beta2 = 4.0;
    double sigma2 = 9.0;
    std::string noise = "t3";
    std::string index_set = "first";

    Scenario build() const {
        Scenario s;
        s.kind = scenario_kind_from_string(name);
        s.m1 = m1;
        s.beta1 = beta1;
        s.beta2 = beta2;
        s.sigma2 = sigma2;
        s.noise = noise_from_string(noise);
        s.index_set = index_set_from_string(index_set);
        return s;
    }
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& flags) {
    cmd->add_option("--scenario", flags.name, "scenario name")
        ->required()
        ->check(CLI::IsMember(scenario_names()));
    cmd->add_option("--m1", flags.m1, "quadratic: signal coordinates (0..5)");
    cmd->add_option("--beta1", flags.beta1, "quadratic: linear coefficient");
    cmd->add_option("--beta2", flags.beta2, "quadratic: quadratic coefficient");
    cmd->add_option("--sigma2", flags.sigma2, "quadratic: noise variance");
    cmd->add_option("--noise", flags.noise, "mixture1000 noise kind")
        ->check(CLI::IsMember({"cauchy", "t3", "normal"}));
    cmd->add_option("--index-set", flags.index_set,
                    "block_correlated100 signal coordinates")
        ->check(CLI::IsMember({"first", "second", "none"}));
}

void write_csv(const std::string& path, const Dataset& data, char delim) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    char buf[40];
    for (int i = 0; i < data.n; ++i) {
        for (int j = 0; j < data.d; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", data.at(i, j));
            if (j > 0) out << delim;
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// test
// ---------------------------------------------------------------------------

struct TestFlags {
    std::string x_path, y_path;
    std::string delimiter = ",";
    std::string metric = "l2";
    std::string stat = "pearson";
    std::uint64_t perms = 1000;
    std::uint64_t seed = 137;
    double alpha = 0.05;
    std::string estimator = "add-one";
    std::string format = "text";
    unsigned threads = env_default_threads();
};

int run_test(const TestFlags& flags) {
    const char delim = parse_delimiter(flags.delimiter);
    const Dataset x = load_csv(flags.x_path, delim);
    const Dataset y = load_csv(flags.y_path, delim);
    if (x.n != y.n) {
        std::ostringstream msg;
        msg << "row count mismatch: " << flags.x_path << " has " << x.n
            << " rows but " << flags.y_path << " has " << y.n;
        throw DataError(msg.str());
    }

    const Metric metric = metric_from_string(flags.metric);
    const StatKind kind = stat_kind_from_string(flags.stat);
    PermutationPlan plan;
    plan.replicates = flags.perms;
    plan.seed = flags.seed;
    plan.estimator = estimator_from_string(flags.estimator);

    const RankTable rank_x = rank_table(distance_matrix(x, metric));
    const RankTable rank_y = rank_table(distance_matrix(y, metric));
    const TestResult result =
        permutation_pvalue(rank_x, rank_y, kind, plan, flags.threads);
    const bool rejected = result.p_value <= flags.alpha;

    if (flags.format == "json") {
        // No elapsed-time field: reports with identical flags are
        // byte-identical.
        nlohmann::json report = {
            {"statistic", std::string(to_string(kind))},
            {"metric", std::string(to_string(metric))},
            {"t", result.observed.t},
            {"n", result.observed.n},
            {"perms", result.plan.replicates},
            {"exceed", result.exceed_count},
            {"p_value", result.p_value},
            {"estimator", std::string(to_string(result.plan.estimator))},
            {"seed", result.plan.seed},
            {"alpha", flags.alpha},
            {"rejected", rejected},
        };
        std::cout << report.dump(2) << '\n';
    } else {
        std::printf("statistic  %s\n", std::string(to_string(kind)).c_str());
        std::printf("metric     %s\n", std::string(to_string(metric)).c_str());
        std::printf("n          %d\n", result.observed.n);
        std::printf("t          %.10g\n", result.observed.t);
        std::printf("perms      %llu\n",
                    static_cast<unsigned long long>(result.plan.replicates));
        std::printf("exceed     %llu\n",
                    static_cast<unsigned long long>(result.exceed_count));
        std::printf("p-value    %.10g\n", result.p_value);
        std::printf("estimator  %s\n",
                    std::string(to_string(result.plan.estimator)).c_str());
        std::printf("seed       %llu\n",
                    static_cast<unsigned long long>(result.plan.seed));
        std::printf("alpha      %g (%s)\n", flags.alpha,
                    rejected ? "rejected" : "not rejected");
        std::printf("elapsed    %.3f s\n", result.elapsed_seconds);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// power
// ---------------------------------------------------------------------------

struct PowerFlags {
    ScenarioFlags scenario;
    std::vector<int> sizes = {50};
    std::string method = "hhg";
    int sims = 200;
    std::uint64_t perms = 200;
    std::uint64_t seed = 137;
    double alpha = 0.05;
    std::string estimator = "add-one";
    std::string metric = "l2";
    std::string format = "tsv";
    unsigned threads = env_default_threads();
    bool quiet = false;
};

std::vector<Method> methods_from_flag(const std::string& name) {
    if (name == "both") return {Method::HhgPearson, Method::Dcov};
    if (name == "all")
        return {Method::HhgPearson, Method::HhgLR, Method::Dcov};
    return {method_from_string(name)};
}

int run_power(const PowerFlags& flags) {
    PowerSpec spec;
    spec.scenario = flags.scenario.build();
    spec.sample_sizes = flags.sizes;
    spec.methods = methods_from_flag(flags.method);
    spec.alpha = flags.alpha;
    spec.simulations = flags.sims;
    spec.plan.replicates = flags.perms;
    spec.plan.seed = flags.seed;
    spec.plan.estimator = estimator_from_string(flags.estimator);
    spec.metric = metric_from_string(flags.metric);
    spec.threads = flags.threads;
    spec.progress = !flags.quiet;

    const auto rows = estimate_power(spec);
    std::cout << emit_table(rows, table_format_from_string(flags.format));
    return 0;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenFlags {
    ScenarioFlags scenario;
    int n = 50;
    std::uint64_t seed = 137;
    std::string out_x, out_y;
    std::string delimiter = ",";
};

int run_gen(const GenFlags& flags) {
    const auto [x, y] = generate(flags.scenario.build(), flags.n, flags.seed);
    const char delim = parse_delimiter(flags.delimiter);
    write_csv(flags.out_x, x, delim);
    write_csv(flags.out_y, y, delim);
    std::cerr << "wrote " << x.n << "x" << x.d << " to " << flags.out_x
              << " and " << y.n << "x" << y.d << " to " << flags.out_y << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchFlags {
    std::vector<int> sizes = {100, 200, 400, 800, 1600};
    int naive_max = 800;
    int reps = 3;
    std::uint64_t seed = 137;
    std::string format = "text";
};

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const double t = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        if (r == 0 || t < best) best = t;
    }
    return best;
}

int run_bench(const BenchFlags& flags) {
    nlohmann::json out = nlohmann::json::array();
    volatile double sink = 0.0;
    for (int n : flags.sizes) {
        Rng rng(derive_stream(flags.seed, {static_cast<std::uint64_t>(n)}));
        Dataset x, y;
        x.n = y.n = n;
        x.d = y.d = 2;
        x.values.resize(static_cast<std::size_t>(n) * 2);
        y.values.resize(static_cast<std::size_t>(n) * 2);
        for (auto& v : x.values) v = rng.normal();
        for (auto& v : y.values) v = rng.normal();

        RankTable rank_x, rank_y;
        const double build_s = time_best_of(1, [&] {
            rank_x = rank_table(distance_matrix(x, Metric::L2));
            rank_y = rank_table(distance_matrix(y, Metric::L2));
        });
        const double fast_s = time_best_of(flags.reps, [&] {
            sink = hhg_statistic_fast(rank_x, rank_y, StatKind::PearsonChiSquare).t;
        });
        double naive_s = -1.0;
        if (n <= flags.naive_max) {
            naive_s = time_best_of(1, [&] {
                sink =
                    hhg_statistic_naive(rank_x, rank_y, StatKind::PearsonChiSquare).t;
            });
        }
        nlohmann::json row = {{"n", n},
                              {"table_build_seconds", build_s},
                              {"fast_seconds", fast_s}};
        if (naive_s >= 0.0)
            row["naive_seconds"] = naive_s;
        out.push_back(row);
        if (flags.format != "json") {
            std::printf("n=%-6d build %9.4fs   fast %9.5fs", n, build_s, fast_s);
            if (naive_s >= 0.0)
                std::printf("   naive %9.4fs   ratio %8.1fx", naive_s,
                            naive_s / fast_s);
            std::printf("\n");
        }
    }
    (void)sink;
    if (flags.format == "json") std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance-rank independence testing"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    TestFlags test_flags;
    CLI::App* test_cmd =
        app.add_subcommand("test", "permutation test on two CSV files");
    test_cmd->add_option("--x", test_flags.x_path, "CSV with X samples (rows)")
        ->required();
    test_cmd->add_option("--y", test_flags.y_path, "CSV with Y samples (rows)")
        ->required();
    test_cmd->add_option("--delimiter", test_flags.delimiter,
                         "field delimiter (single char or 'tab')");
    test_cmd->add_option("--metric", test_flags.metric, "distance metric")
        ->check(CLI::IsMember({"l1", "l2", "linf"}));
    test_cmd->add_option("--stat", test_flags.stat, "statistic kind")
        ->check(CLI::IsMember({"pearson", "lr"}));
    test_cmd->add_option("--perms", test_flags.perms, "permutation replicates")
        ->check(CLI::PositiveNumber);
    test_cmd->add_option("--seed", test_flags.seed, "rng seed");
    test_cmd->add_option("--alpha", test_flags.alpha, "significance level")
        ->check(CLI::Range(1e-9, 1.0));
    test_cmd->add_option("--estimator", test_flags.estimator, "p-value estimator")
        ->check(CLI::IsMember({"add-one", "raw"}));
    test_cmd->add_option("--format", test_flags.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    test_cmd->add_option("--threads", test_flags.threads, "worker threads");

    PowerFlags power_flags;
    CLI::App* power_cmd =
        app.add_subcommand("power", "Monte-Carlo power study on a scenario");
    add_scenario_flags(power_cmd, power_flags.scenario);
    power_cmd->add_option("--n", power_flags.sizes, "sample sizes")->delimiter(',');
    power_cmd->add_option("--method", power_flags.method,
                          "hhg, hhg-lr, dcov, both, or all")
        ->check(CLI::IsMember({"hhg", "hhg-lr", "dcov", "both", "all"}));
    power_cmd->add_option("--sims", power_flags.sims, "simulations per row")
        ->check(CLI::PositiveNumber);
    power_cmd->add_option("--perms", power_flags.perms, "permutation replicates")
        ->check(CLI::PositiveNumber);
    power_cmd->add_option("--seed", power_flags.seed, "master seed");
    power_cmd->add_option("--alpha", power_flags.alpha, "significance level")
        ->check(CLI::Range(1e-9, 1.0));
    power_cmd->add_option("--estimator", power_flags.estimator,
                          "p-value estimator")
        ->check(CLI::IsMember({"add-one", "raw"}));
    power_cmd->add_option("--metric", power_flags.metric, "distance metric")
        ->check(CLI::IsMember({"l1", "l2", "linf"}));
    power_cmd->add_option("--format", power_flags.format, "table format")
        ->check(CLI::IsMember({"tsv", "json", "markdown"}));
    power_cmd->add_option("--threads", power_flags.threads, "worker threads");
    power_cmd->add_flag("--quiet", power_flags.quiet, "suppress progress lines");

    GenFlags gen_flags;
    CLI::App* gen_cmd =
        app.add_subcommand("gen", "dump a generated scenario sample to CSV");
    add_scenario_flags(gen_cmd, gen_flags.scenario);
    gen_cmd->add_option("--n", gen_flags.n, "sample count")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen_flags.seed, "rng seed");
    gen_cmd->add_option("--out-x", gen_flags.out_x, "output CSV for X")->required();
    gen_cmd->add_option("--out-y", gen_flags.out_y, "output CSV for Y")->required();
    gen_cmd->add_option("--delimiter", gen_flags.delimiter,
                        "field delimiter (single char or 'tab')");

    std::uint64_t selftest_seed = 20121972;
    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "run the oracle-equivalence suites");
    selftest_cmd->add_option("--seed", selftest_seed, "rng seed");

    BenchFlags bench_flags;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "time the fast statistic across sample sizes");
    bench_cmd->add_option("--sizes", bench_flags.sizes, "sample sizes")->delimiter(',');
    bench_cmd->add_option("--naive-max", bench_flags.naive_max,
                          "largest n for the cubic reference");
    bench_cmd->add_option("--reps", bench_flags.reps, "repetitions (best-of)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_flags.seed, "rng seed");
    bench_cmd->add_option("--format", bench_flags.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (test_cmd->parsed()) return run_test(test_flags);
        if (power_cmd->parsed()) return run_power(power_flags);
        if (gen_cmd->parsed()) return run_gen(gen_flags);
        if (bench_cmd->parsed()) return run_bench(bench_flags);
        if (selftest_cmd->parsed()) {
            const SelfTestReport report = run_selftest(selftest_seed);
            print_report(report, std::cout);
            return report.all_passed() ? 0 : 3;
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
