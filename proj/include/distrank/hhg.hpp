#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "distrank/dataset.hpp"

namespace distrank {

enum class StatKind {
    PearsonChiSquare,
    LikelihoodRatio,
    DistanceCovariance,  // label for dcov test results; not an HHG statistic
};

StatKind stat_kind_from_string(std::string_view name);
std::string_view to_string(StatKind kind);

// 2x2 cross-classification of the N-2 points other than (center, probe):
// rows split on preceding the probe in the center's X ordering, columns on
// preceding it in the Y ordering.  Cells sum to N-2.
struct ContingencyCounts {
    std::int64_t a11 = 0;
    std::int64_t a12 = 0;
    std::int64_t a21 = 0;
    std::int64_t a22 = 0;
    int center = -1;
    int probe = -1;

    std::int64_t total() const { return a11 + a12 + a21 + a22; }

    bool operator==(const ContingencyCounts& o) const {
        return a11 == o.a11 && a12 == o.a12 && a21 == o.a21 && a22 == o.a22;
    }
};

struct StatisticValue {
    double t = 0.0;
    int n = 0;
    StatKind kind = StatKind::PearsonChiSquare;
};

// Pearson chi-square score of one table; 0 when any margin is 0.
double pearson_s(const ContingencyCounts& c);

// Log-likelihood-ratio score; 0*log(0) terms drop, and the same zero-margin
// rule as pearson_s applies so the value stays finite.
double lr_s(const ContingencyCounts& c);

// Direct count over k not in {center, probe}; the ground-truth oracle.
ContingencyCounts contingency_counts_naive(const RankTable& rank_x,
                                           const RankTable& rank_y, int center,
                                           int probe);

// Sum of per-pair scores over all N(N-1) ordered (center, probe) pairs,
// by exhaustive counting.  O(N^3).
StatisticValue hhg_statistic_naive(const RankTable& rank_x,
                                   const RankTable& rank_y, StatKind kind);

// Same statistic via per-center rank composition and inversion counting,
// O(N^2 log N).  Agrees with hhg_statistic_naive to 1e-9 relative (the cell
// counts are identical integers; only summation order differs).
StatisticValue hhg_statistic_fast(const RankTable& rank_x,
                                  const RankTable& rank_y, StatKind kind);

// All N(N-1) tables as reconstructed by the fast path, for oracle tests.
std::vector<ContingencyCounts> hhg_cells_fast(const RankTable& rank_x,
                                              const RankTable& rank_y);

}  // namespace distrank
