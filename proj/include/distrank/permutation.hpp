#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "distrank/dataset.hpp"
#include "distrank/hhg.hpp"

namespace distrank {

enum class PValueEstimator {
    AddOne,       // (1 + exceed) / (1 + B); never returns 0
    RawFraction,  // exceed / B
};

PValueEstimator estimator_from_string(std::string_view name);
std::string_view to_string(PValueEstimator e);

struct PermutationPlan {
    std::uint64_t replicates = 1000;
    std::uint64_t seed = 0;
    PValueEstimator estimator = PValueEstimator::AddOne;
};

struct TestResult {
    StatisticValue observed;
    double p_value = 1.0;
    std::uint64_t exceed_count = 0;
    PermutationPlan plan;
    double elapsed_seconds = 0.0;
};

// Rank table of the dataset in which sample sigma[i] holds point i's vector.
// Tied runs are re-sorted by the new indices, so the result is identical to
// rebuilding the table from the permuted raw data.  Distances are never
// recomputed.
RankTable relabel_rank_table(const RankTable& rank_y,
                             std::span<const std::int32_t> sigma);

// Permutation test of the fast statistic under Y relabeling.  Replicate b
// draws its permutation from a stream derived from (plan.seed, b), so the
// exceed count is identical for any worker count.
TestResult permutation_pvalue(const RankTable& rank_x, const RankTable& rank_y,
                              StatKind kind, const PermutationPlan& plan,
                              unsigned threads = 1);

double estimate_p_value(PValueEstimator estimator, std::uint64_t exceed,
                        std::uint64_t replicates);

}  // namespace distrank
