#pragma once

#include "distrank/dataset.hpp"
#include "distrank/permutation.hpp"

namespace distrank {

// Double-centered distance matrix: entry minus row mean minus column mean
// plus grand mean.  All row and column sums vanish.
struct CenteredDistances {
    int n = 0;
    std::vector<double> a;  // row-major, n*n

    double operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }
};

CenteredDistances double_center(const DistanceMatrix& dist);

// N * V^2 with V^2 = (1/N^2) sum_jk A[j][k] * B[j][k]; the permuted
// V-statistic of the distance-covariance test.
double dcov_statistic(const DistanceMatrix& dist_x, const DistanceMatrix& dist_y);

// Permutation p-value under Y relabeling; rows/columns of the centered Y
// matrix are re-indexed, distances are never recomputed.
TestResult dcov_pvalue(const DistanceMatrix& dist_x, const DistanceMatrix& dist_y,
                       const PermutationPlan& plan, unsigned threads = 1);

}  // namespace distrank
