#include "distrank/dcov.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>

#include "distrank/parallel.hpp"
#include "distrank/rng.hpp"

namespace distrank {

CenteredDistances double_center(const DistanceMatrix& dist) {
    const int n = dist.n;
    if (n < 1) throw std::invalid_argument("distance matrix is empty");

    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += dist(i, j);
        row_mean[i] = s / n;
        grand += s;
    }
    grand /= static_cast<double>(n) * n;

    CenteredDistances out;
    out.n = n;
    out.a.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.a[static_cast<std::size_t>(i) * n + j] =
                dist(i, j) - row_mean[i] - row_mean[j] + grand;
    return out;
}

namespace {

double nv2_from_centered(const CenteredDistances& a, const CenteredDistances& b) {
    const int n = a.n;
    long double s = 0.0L;
    for (std::size_t k = 0; k < a.a.size(); ++k)
        s += static_cast<long double>(a.a[k]) * b.a[k];
    // N * V^2 = (1/N) * sum
    return static_cast<double>(s / n);
}

}  // namespace

double dcov_statistic(const DistanceMatrix& dist_x, const DistanceMatrix& dist_y) {
    if (dist_x.n != dist_y.n)
        throw std::invalid_argument("distance matrices have different sizes");
    if (dist_x.n < 2) throw std::invalid_argument("need at least 2 samples");
    return nv2_from_centered(double_center(dist_x), double_center(dist_y));
}

TestResult dcov_pvalue(const DistanceMatrix& dist_x, const DistanceMatrix& dist_y,
                       const PermutationPlan& plan, unsigned threads) {
    if (dist_x.n != dist_y.n)
        throw std::invalid_argument("distance matrices have different sizes");
    if (dist_x.n < 3) throw std::invalid_argument("need at least 3 samples");
    if (plan.replicates < 1)
        throw std::invalid_argument("need at least one permutation replicate");

    const auto start = std::chrono::steady_clock::now();
    const int n = dist_x.n;
    const CenteredDistances a = double_center(dist_x);
    const CenteredDistances b = double_center(dist_y);
    const double observed = nv2_from_centered(a, b);

    std::atomic<std::uint64_t> exceed{0};
    parallel_for(plan.replicates, threads, [&](std::size_t rep) {
        Rng rng(derive_stream(plan.seed, {rep}));
        const auto sigma = rng.permutation(n);
        // Relabeling Y rows/columns: centering commutes with a simultaneous
        // row/column permutation, so permute indices of the centered matrix.
        long double s = 0.0L;
        for (int i = 0; i < n; ++i) {
            const double* arow =
                a.a.data() + static_cast<std::size_t>(sigma[i]) * n;
            const double* brow = b.a.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) s += arow[sigma[j]] * brow[j];
        }
        const double replicate = static_cast<double>(s / n);
        if (replicate >= observed) exceed.fetch_add(1);
    });

    TestResult result;
    result.observed = {observed, n, StatKind::DistanceCovariance};
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
