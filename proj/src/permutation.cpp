#include "distrank/permutation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>

#include "distrank/parallel.hpp"
#include "distrank/rng.hpp"

namespace distrank {

PValueEstimator estimator_from_string(std::string_view name) {
    if (name == "add-one" || name == "addone") return PValueEstimator::AddOne;
    if (name == "raw" || name == "raw-fraction") return PValueEstimator::RawFraction;
    throw std::invalid_argument("unknown estimator: " + std::string(name));
}

std::string_view to_string(PValueEstimator e) {
    return e == PValueEstimator::AddOne ? "add-one" : "raw";
}

double estimate_p_value(PValueEstimator estimator, std::uint64_t exceed,
                        std::uint64_t replicates) {
    if (estimator == PValueEstimator::AddOne)
        return static_cast<double>(1 + exceed) / static_cast<double>(1 + replicates);
    return static_cast<double>(exceed) / static_cast<double>(replicates);
}

namespace {

bool is_permutation_0n(std::span<const std::int32_t> sigma) {
    const std::size_t n = sigma.size();
    std::vector<bool> seen(n, false);
    for (std::int32_t v : sigma) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) return false;
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

}  // namespace

RankTable relabel_rank_table(const RankTable& rank_y,
                             std::span<const std::int32_t> sigma) {
    const int n = rank_y.n;
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("permutation length does not match table");
    if (!is_permutation_0n(sigma))
        throw std::invalid_argument("sigma is not a permutation of 0..N-1");

    RankTable out;
    out.n = n;
    out.order.resize(rank_y.order.size());
    out.tied_with_prev = rank_y.tied_with_prev;  // run structure is distance-only
    out.rank.assign(rank_y.rank.size(), 0);

    const int m = n - 1;
    for (int i = 0; i < n; ++i) {
        const int target = sigma[i];
        const auto src_order = rank_y.order_row(i);
        const auto src_ties = rank_y.tie_row(i);
        auto* dst_order = out.order.data() + static_cast<std::size_t>(target) * m;
        auto* dst_ties =
            out.tied_with_prev.data() + static_cast<std::size_t>(target) * m;
        for (int p = 0; p < m; ++p) {
            dst_order[p] = sigma[src_order[p]];
            dst_ties[p] = src_ties[p];
        }
        // Relabeled ties must follow the new ascending-index rule, exactly as
        // a rebuild from the permuted raw data would order them.
        int p = 0;
        while (p < m) {
            int end = p + 1;
            while (end < m && dst_ties[end]) ++end;
            if (end - p > 1) std::sort(dst_order + p, dst_order + end);
            p = end;
        }
        auto* dst_rank = out.rank.data() + static_cast<std::size_t>(target) * n;
        for (int q = 0; q < m; ++q) dst_rank[dst_order[q]] = q + 1;
    }
    return out;
}

TestResult permutation_pvalue(const RankTable& rank_x, const RankTable& rank_y,
                              StatKind kind, const PermutationPlan& plan,
                              unsigned threads) {
    if (rank_x.n != rank_y.n)
        throw std::invalid_argument("rank tables have different sample counts");
    if (rank_x.n < 3) throw std::invalid_argument("need at least 3 samples");
    if (plan.replicates < 1)
        throw std::invalid_argument("need at least one permutation replicate");

    const auto start = std::chrono::steady_clock::now();
    const StatisticValue observed = hhg_statistic_fast(rank_x, rank_y, kind);

    std::atomic<std::uint64_t> exceed{0};
    parallel_for(plan.replicates, threads, [&](std::size_t b) {
        Rng rng(derive_stream(plan.seed, {b}));
        const auto sigma = rng.permutation(rank_y.n);
        const RankTable relabeled = relabel_rank_table(rank_y, sigma);
        const StatisticValue replicate = hhg_statistic_fast(rank_x, relabeled, kind);
        if (replicate.t >= observed.t) exceed.fetch_add(1);
    });

    TestResult result;
    result.observed = observed;
    result.exceed_count = exceed.load();
    result.plan = plan;
    result.p_value =
        estimate_p_value(plan.estimator, result.exceed_count, plan.replicates);
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

}  // namespace distrank
