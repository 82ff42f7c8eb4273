#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "distrank/hhg.hpp"
#include "distrank/rng.hpp"
#include "test_util.hpp"

using namespace distrank;

namespace {

ContingencyCounts table(std::int64_t a11, std::int64_t a12, std::int64_t a21,
                        std::int64_t a22) {
    ContingencyCounts c;
    c.a11 = a11;
    c.a12 = a12;
    c.a21 = a21;
    c.a22 = a22;
    return c;
}

// classic chi-square sum over (observed - expected)^2 / expected, as an
// independent route to the same quantity
double chi_square_direct(const ContingencyCounts& c) {
    const double n = static_cast<double>(c.total());
    const double r[2] = {static_cast<double>(c.a11 + c.a12),
                         static_cast<double>(c.a21 + c.a22)};
    const double col[2] = {static_cast<double>(c.a11 + c.a21),
                           static_cast<double>(c.a12 + c.a22)};
    const double obs[2][2] = {
        {static_cast<double>(c.a11), static_cast<double>(c.a12)},
        {static_cast<double>(c.a21), static_cast<double>(c.a22)}};
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double e = r[i] * col[j] / n;
            s += (obs[i][j] - e) * (obs[i][j] - e) / e;
        }
    return s;
}

ContingencyCounts enumerate_from_distances(const DistanceMatrix& dx,
                                           const DistanceMatrix& dy, int i,
                                           int j) {
    // indicator conditions evaluated straight off the distances, with the
    // (distance, index) tie-break rendered as lexicographic comparison
    ContingencyCounts c;
    c.center = i;
    c.probe = j;
    for (int k = 0; k < dx.n; ++k) {
        if (k == i || k == j) continue;
        const bool in_x =
            dx(i, k) < dx(i, j) || (dx(i, k) == dx(i, j) && k < j);
        const bool in_y =
            dy(i, k) < dy(i, j) || (dy(i, k) == dy(i, j) && k < j);
        if (in_x && in_y)
            ++c.a11;
        else if (in_x)
            ++c.a12;
        else if (in_y)
            ++c.a21;
        else
            ++c.a22;
    }
    return c;
}

}  // namespace

TEST_CASE("pearson_s pinned tables") {
    CHECK(pearson_s(table(2, 2, 2, 2)) == 0.0);
    CHECK(pearson_s(table(3, 0, 0, 3)) == doctest::Approx(6.0));
    const double expected = 12.0 * 324.0 / 1260.0;
    CHECK(pearson_s(table(5, 1, 2, 4)) == doctest::Approx(expected));
    CHECK(pearson_s(table(5, 1, 2, 4)) ==
          doctest::Approx(chi_square_direct(table(5, 1, 2, 4))));
    // zero margins
    CHECK(pearson_s(table(0, 0, 3, 3)) == 0.0);
    CHECK(pearson_s(table(3, 0, 3, 0)) == 0.0);
}

TEST_CASE("lr_s pinned tables") {
    CHECK(lr_s(table(2, 2, 2, 2)) == 0.0);
    CHECK(lr_s(table(3, 0, 0, 3)) == doctest::Approx(12.0 * std::log(2.0)));
    CHECK(lr_s(table(0, 0, 3, 3)) == 0.0);
    CHECK(lr_s(table(0, 4, 2, 0)) > 0.0);
}

TEST_CASE("naive contingency counting") {
    Rng rng(31);
    SUBCASE("N=3 puts the single remaining point in one cell") {
        const Dataset x = testutil::random_dataset(rng, 3, 2);
        const Dataset y = testutil::random_dataset(rng, 3, 2);
        const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
        const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                const ContingencyCounts c = contingency_counts_naive(rx, ry, i, j);
                CHECK(c.total() == 1);
                CHECK(c.a11 + c.a12 + c.a21 + c.a22 == 1);
            }
    }
    SUBCASE("identical rank tables give zero discordant cells") {
        const Dataset x = testutil::random_dataset(rng, 12, 2);
        const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) {
                if (i == j) continue;
                const ContingencyCounts c = contingency_counts_naive(rx, rx, i, j);
                CHECK(c.a12 == 0);
                CHECK(c.a21 == 0);
            }
    }
    SUBCASE("counts equal enumeration of the indicator conditions") {
        for (bool grid : {false, true}) {
            const Dataset x = testutil::random_dataset(rng, 10, 2, grid);
            const Dataset y = testutil::random_dataset(rng, 10, 2, grid);
            const DistanceMatrix dx = distance_matrix(x, Metric::L2);
            const DistanceMatrix dy = distance_matrix(y, Metric::L2);
            const RankTable rx = rank_table(dx);
            const RankTable ry = rank_table(dy);
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j) {
                    if (i == j) continue;
                    CHECK(contingency_counts_naive(rx, ry, i, j) ==
                          enumerate_from_distances(dx, dy, i, j));
                }
        }
    }
    SUBCASE("preconditions") {
        const Dataset x = testutil::random_dataset(rng, 5, 1);
        const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
        CHECK_THROWS_AS((void)contingency_counts_naive(rx, rx, 2, 2),
                        std::invalid_argument);
        CHECK_THROWS_AS((void)contingency_counts_naive(rx, rx, 0, 7),
                        std::invalid_argument);
    }
}

TEST_CASE("fast path reconstructs every naive cell exactly") {
    Rng rng(32);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 3 + static_cast<int>(rng.bounded(30));
        const bool grid = rep % 3 == 0;
        const Dataset x = testutil::random_dataset(rng, n, 2, grid);
        const Dataset y = testutil::random_dataset(rng, n, 2, grid);
        const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
        const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
        for (const auto& c : hhg_cells_fast(rx, ry)) {
            CHECK(c == contingency_counts_naive(rx, ry, c.center, c.probe));
            CHECK(c.total() == n - 2);
            CHECK(c.a11 >= 0);
            CHECK(c.a12 >= 0);
            CHECK(c.a21 >= 0);
            CHECK(c.a22 >= 0);
        }
    }
}

TEST_CASE("fast statistic equals naive statistic") {
    Rng rng(33);
    const Metric metrics[] = {Metric::L1, Metric::L2, Metric::Linf};
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 3 + static_cast<int>(rng.bounded(40));
        const int d = 1 + static_cast<int>(rng.bounded(5));
        const Metric metric = metrics[rep % 3];
        const Dataset x = testutil::random_dataset(rng, n, d);
        const Dataset y = testutil::random_dataset(rng, n, d);
        const RankTable rx = rank_table(distance_matrix(x, metric));
        const RankTable ry = rank_table(distance_matrix(y, metric));
        for (StatKind kind :
             {StatKind::PearsonChiSquare, StatKind::LikelihoodRatio}) {
            const double fast = hhg_statistic_fast(rx, ry, kind).t;
            const double naive = hhg_statistic_naive(rx, ry, kind).t;
            CHECK(fast ==
                  doctest::Approx(naive).epsilon(1e-9).scale(std::max(1.0, naive)));
        }
    }
}

TEST_CASE("N=3 statistic is zero and finite") {
    Rng rng(34);
    for (int rep = 0; rep < 5; ++rep) {
        const Dataset x = testutil::random_dataset(rng, 3, 1);
        const Dataset y = testutil::random_dataset(rng, 3, 1);
        const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
        const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
        const double t = hhg_statistic_naive(rx, ry, StatKind::PearsonChiSquare).t;
        CHECK(std::isfinite(t));
        // every 2x2 table of a single point has a zero margin
        CHECK(t == 0.0);
        CHECK(hhg_statistic_fast(rx, ry, StatKind::PearsonChiSquare).t == 0.0);
    }
}

TEST_CASE("identical datasets attain the concordant maximum") {
    Rng rng(35);
    const int n = 20;
    const Dataset x = testutil::random_dataset(rng, n, 2);
    const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
    const double t = hhg_statistic_naive(rx, rx, StatKind::PearsonChiSquare).t;
    CHECK(t == doctest::Approx(hhg_statistic_fast(rx, rx, StatKind::PearsonChiSquare).t));
    // perfectly concordant pairs score N-2 whenever both margins are nonzero,
    // which happens for x-rank p in {2, ..., N-2} at each of the N centers
    const double expected = static_cast<double>(n) * (n - 3) * (n - 2);
    CHECK(t == doctest::Approx(expected));
}

TEST_CASE("role symmetry: swapping the tables preserves the statistic") {
    Rng rng(36);
    const Dataset x = testutil::random_dataset(rng, 18, 3);
    const Dataset y = testutil::random_dataset(rng, 18, 2);
    const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
    const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
    // transposing a table swaps the margins but leaves both scores unchanged,
    // so only summation order can differ
    CHECK(hhg_statistic_naive(rx, ry, StatKind::PearsonChiSquare).t ==
          hhg_statistic_naive(ry, rx, StatKind::PearsonChiSquare).t);
    for (StatKind kind : {StatKind::PearsonChiSquare, StatKind::LikelihoodRatio}) {
        const double naive_xy = hhg_statistic_naive(rx, ry, kind).t;
        const double naive_yx = hhg_statistic_naive(ry, rx, kind).t;
        CHECK(naive_xy == doctest::Approx(naive_yx).epsilon(1e-12));
        const double fast_xy = hhg_statistic_fast(rx, ry, kind).t;
        const double fast_yx = hhg_statistic_fast(ry, rx, kind).t;
        CHECK(fast_xy == doctest::Approx(fast_yx).epsilon(1e-9));
    }
}

TEST_CASE("positive affine maps of 1-dim data preserve the statistic") {
    Rng rng(37);
    Dataset x = testutil::random_dataset(rng, 16, 1);
    const Dataset y = testutil::random_dataset(rng, 16, 1);
    const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
    const double before = hhg_statistic_fast(
        rank_table(distance_matrix(x, Metric::L2)), ry,
        StatKind::PearsonChiSquare).t;
    for (auto& v : x.values) v = 2.5 * v - 11.0;
    const double after = hhg_statistic_fast(
        rank_table(distance_matrix(x, Metric::L2)), ry,
        StatKind::PearsonChiSquare).t;
    CHECK(before == after);
}

TEST_CASE("statistic bounds") {
    Rng rng(38);
    for (int rep = 0; rep < 8; ++rep) {
        const int n = 3 + static_cast<int>(rng.bounded(25));
        const Dataset x = testutil::random_dataset(rng, n, 1);
        const Dataset y = testutil::random_dataset(rng, n, 1);
        const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
        const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
        const double tp = hhg_statistic_fast(rx, ry, StatKind::PearsonChiSquare).t;
        const double tl = hhg_statistic_fast(rx, ry, StatKind::LikelihoodRatio).t;
        CHECK(tp >= 0.0);
        CHECK(tl >= 0.0);
        // per-pair Pearson score is at most N-2; the LR score at most
        // 2*log(2)*(N-2)
        const double pairs = static_cast<double>(n) * (n - 1);
        CHECK(tp <= (n - 2) * pairs);
        CHECK(tl <= 2.0 * std::log(2.0) * (n - 2) * pairs + 1e-9);
    }
}

TEST_CASE("zero statistic iff every pair is degenerate") {
    Rng rng(39);
    const auto all_degenerate = [](const RankTable& rx, const RankTable& ry) {
        for (int i = 0; i < rx.n; ++i)
            for (int j = 0; j < rx.n; ++j) {
                if (i == j) continue;
                const auto c = contingency_counts_naive(rx, ry, i, j);
                const bool zero_margin = c.a11 + c.a12 == 0 || c.a21 + c.a22 == 0 ||
                                         c.a11 + c.a21 == 0 || c.a12 + c.a22 == 0;
                if (!zero_margin && c.a12 * c.a21 != c.a11 * c.a22) return false;
            }
        return true;
    };
    {
        const Dataset x = testutil::random_dataset(rng, 3, 1);
        const Dataset y = testutil::random_dataset(rng, 3, 1);
        const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
        const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
        CHECK(hhg_statistic_fast(rx, ry, StatKind::PearsonChiSquare).t == 0.0);
        CHECK(all_degenerate(rx, ry));
    }
    {
        const Dataset x = testutil::random_dataset(rng, 8, 1);
        const Dataset y = testutil::random_dataset(rng, 8, 1);
        const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
        const RankTable ry = rank_table(distance_matrix(y, Metric::L2));
        const double t = hhg_statistic_fast(rx, ry, StatKind::PearsonChiSquare).t;
        CHECK(t > 0.0);
        CHECK(!all_degenerate(rx, ry));
    }
}

TEST_CASE("preconditions and kind validation") {
    Rng rng(40);
    const Dataset x = testutil::random_dataset(rng, 5, 1);
    const Dataset y2 = testutil::random_dataset(rng, 2, 1);
    const RankTable rx = rank_table(distance_matrix(x, Metric::L2));
    const RankTable r2 = rank_table(distance_matrix(y2, Metric::L2));
    CHECK_THROWS_AS((void)hhg_statistic_fast(r2, r2, StatKind::PearsonChiSquare),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)hhg_statistic_naive(rx, r2, StatKind::PearsonChiSquare),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)hhg_statistic_fast(rx, rx, StatKind::DistanceCovariance),
                    std::invalid_argument);
}
