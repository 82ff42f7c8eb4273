#include "distrank/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "distrank/dcov.hpp"
#include "distrank/hhg.hpp"
#include "distrank/inversions.hpp"
#include "distrank/permutation.hpp"
#include "distrank/rng.hpp"

namespace distrank {

namespace {

Dataset random_dataset(Rng& rng, int n, int d, bool snap_to_grid) {
    Dataset data;
    data.n = n;
    data.d = d;
    data.values.resize(static_cast<std::size_t>(n) * d);
    for (auto& v : data.values) {
        v = rng.normal();
        if (snap_to_grid) v = std::round(3.0 * v) / 2.0;  // forces tied distances
    }
    return data;
}

Dataset permute_rows(const Dataset& data, std::span<const std::int32_t> sigma) {
    Dataset out;
    out.n = data.n;
    out.d = data.d;
    out.values.resize(data.values.size());
    for (int i = 0; i < data.n; ++i) {
        const auto src = data.row(i);
        double* dst = out.values.data() +
                      static_cast<std::size_t>(sigma[i]) * data.d;
        for (int j = 0; j < data.d; ++j) dst[j] = src[j];
    }
    return out;
}

bool tables_equal(const RankTable& a, const RankTable& b) {
    return a.n == b.n && a.order == b.order && a.rank == b.rank;
}

std::string check_inversions(Rng& rng) {
    // exhaustive over all permutations of length <= 7
    for (int m = 1; m <= 7; ++m) {
        std::vector<std::int32_t> pi(m);
        for (int j = 0; j < m; ++j) pi[j] = j + 1;
        do {
            if (inversions_mergesort(pi) != inversions_naive(pi)) {
                std::ostringstream msg;
                msg << "mismatch at M=" << m;
                return msg.str();
            }
        } while (std::next_permutation(pi.begin(), pi.end()));
    }
    for (int m : {10, 100, 1000, 2048}) {
        for (int rep = 0; rep < 5; ++rep) {
            auto p0 = rng.permutation(m);
            std::vector<std::int32_t> pi(m);
            for (int j = 0; j < m; ++j) pi[j] = p0[j] + 1;
            if (inversions_mergesort(pi) != inversions_naive(pi)) {
                std::ostringstream msg;
                msg << "mismatch at random M=" << m;
                return msg.str();
            }
        }
    }
    return {};
}

std::string check_fast_vs_naive(Rng& rng) {
    const Metric metrics[] = {Metric::L1, Metric::L2, Metric::Linf};
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 3 + static_cast<int>(rng.bounded(38));
        const int d = rep % 3 == 0 ? 1 : rep % 3 == 1 ? 2 : 5;
        const Metric metric = metrics[rep % 3];
        const bool grid = rep % 5 == 0;
        const Dataset x = random_dataset(rng, n, d, grid);
        const Dataset y = random_dataset(rng, n, d, grid);
        const RankTable rx = rank_table(distance_matrix(x, metric));
        const RankTable ry = rank_table(distance_matrix(y, metric));

        const auto cells = hhg_cells_fast(rx, ry);
        for (const auto& c : cells) {
            const auto oracle = contingency_counts_naive(rx, ry, c.center, c.probe);
            if (!(c == oracle)) {
                std::ostringstream msg;
                msg << "cell mismatch n=" << n << " center=" << c.center
                    << " probe=" << c.probe;
                return msg.str();
            }
        }
        for (StatKind kind :
             {StatKind::PearsonChiSquare, StatKind::LikelihoodRatio}) {
            const double fast = hhg_statistic_fast(rx, ry, kind).t;
            const double naive = hhg_statistic_naive(rx, ry, kind).t;
            const double scale = std::max(1.0, std::abs(naive));
            if (std::abs(fast - naive) > 1e-9 * scale) {
                std::ostringstream msg;
                msg << "statistic mismatch n=" << n << " fast=" << fast
                    << " naive=" << naive;
                return msg.str();
            }
        }
    }
    return {};
}

std::string check_relabel(Rng& rng) {
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 4 + static_cast<int>(rng.bounded(27));
        const bool grid = rep % 2 == 0;
        const Dataset y = random_dataset(rng, n, 2, grid);
        const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
        const auto sigma = rng.permutation(n);
        const RankTable relabeled = relabel_rank_table(ry, sigma);
        const RankTable recomputed =
            rank_table(distance_matrix(permute_rows(y, sigma), Metric::L2));
        if (!tables_equal(relabeled, recomputed)) {
            std::ostringstream msg;
            msg << "relabel mismatch n=" << n << (grid ? " (tied data)" : "");
            return msg.str();
        }
    }
    return {};
}

std::string check_dcov(Rng& rng) {
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng.bounded(19));
        const Dataset x = random_dataset(rng, n, 3, false);
        const Dataset y = random_dataset(rng, n, 2, false);
        const DistanceMatrix dx = distance_matrix(x, Metric::L2);
        const DistanceMatrix dy = distance_matrix(y, Metric::L2);
        const double got = dcov_statistic(dx, dy);

        // independent route: N*V^2 = N*(S1 + S2 - 2*S3)
        double s1 = 0.0, s3 = 0.0, mean_a = 0.0, mean_b = 0.0;
        for (int i = 0; i < n; ++i) {
            double ra = 0.0, rb = 0.0;
            for (int j = 0; j < n; ++j) {
                s1 += dx(i, j) * dy(i, j);
                ra += dx(i, j);
                rb += dy(i, j);
            }
            s3 += ra * rb;
            mean_a += ra;
            mean_b += rb;
        }
        const double nd = n;
        s1 /= nd * nd;
        s3 /= nd * nd * nd;
        mean_a /= nd * nd;
        mean_b /= nd * nd;
        const double expected = nd * (s1 + mean_a * mean_b - 2.0 * s3);
        if (std::abs(got - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
            std::ostringstream msg;
            msg << "dcov mismatch n=" << n << " got=" << got
                << " expected=" << expected;
            return msg.str();
        }
    }
    return {};
}

}  // namespace

SelfTestReport run_selftest(std::uint64_t seed) {
    SelfTestReport report;
    const std::pair<std::string, std::string (*)(Rng&)> suites[] = {
        {"inversions: merge sort vs quadratic definition", &check_inversions},
        {"statistic: fast cells and totals vs naive", &check_fast_vs_naive},
        {"permutation: relabel vs full recompute", &check_relabel},
        {"dcov: centered product vs direct expansion", &check_dcov},
    };
    int idx = 0;
    for (const auto& [name, fn] : suites) {
        Rng rng(derive_stream(seed, {fnv1a64(name), static_cast<std::uint64_t>(idx++)}));
        SelfTestReport::Suite suite;
        suite.name = name;
        suite.detail = fn(rng);
        suite.passed = suite.detail.empty();
        report.suites.push_back(std::move(suite));
    }
    return report;
}

void print_report(const SelfTestReport& report, std::ostream& out) {
    for (const auto& s : report.suites) {
        out << (s.passed ? "[ok]   " : "[FAIL] ") << s.name;
        if (!s.passed) out << " -- " << s.detail;
        out << '\n';
    }
    out << (report.all_passed() ? "selftest passed" : "selftest FAILED") << '\n';
}

}  // namespace distrank
