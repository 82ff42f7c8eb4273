#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "distrank/dataset.hpp"
#include "distrank/rng.hpp"
#include "test_util.hpp"

using namespace distrank;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("distrank_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + ".csv");
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("load_csv parses plain numeric rows") {
    TempFile f("0,0\n3,4\n");
    const Dataset d = load_csv(f.path.string());
    CHECK(d.n == 2);
    CHECK(d.d == 2);
    CHECK(d.at(1, 0) == 3.0);
    CHECK(d.at(1, 1) == 4.0);
}

TEST_CASE("load_csv skips a single header row") {
    TempFile f("a,b\n1,2\n");
    const Dataset d = load_csv(f.path.string());
    CHECK(d.n == 1);
    CHECK(d.d == 2);
    CHECK(d.at(0, 0) == 1.0);
}

TEST_CASE("load_csv error paths are distinct") {
    SUBCASE("ragged row") {
        TempFile f("1,2\n3\n");
        CHECK_THROWS_WITH_AS((void)load_csv(f.path.string()),
                             doctest::Contains("ragged"), DataError);
    }
    SUBCASE("non-numeric cell outside header") {
        TempFile f("1,2\nx,4\n");
        CHECK_THROWS_WITH_AS((void)load_csv(f.path.string()),
                             doctest::Contains("non-numeric"), DataError);
    }
    SUBCASE("empty file") {
        TempFile f("");
        CHECK_THROWS_WITH_AS((void)load_csv(f.path.string()),
                             doctest::Contains("no data rows"), DataError);
    }
    SUBCASE("header only") {
        TempFile f("a,b\n");
        CHECK_THROWS_AS((void)load_csv(f.path.string()), DataError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_WITH_AS((void)load_csv("/nonexistent/path.csv"),
                             doctest::Contains("cannot open"), DataError);
    }
    SUBCASE("non-finite value") {
        TempFile f("1,2\n3,inf\n");
        CHECK_THROWS_AS((void)load_csv(f.path.string()), DataError);
    }
}

TEST_CASE("load_csv handles CRLF and tab delimiters") {
    TempFile f("1\t2\r\n3\t4\r\n");
    const Dataset d = load_csv(f.path.string(), '\t');
    CHECK(d.n == 2);
    CHECK(d.d == 2);
    CHECK(d.at(1, 1) == 4.0);
}

TEST_CASE("distance_matrix on pinned points") {
    Dataset d;
    d.n = 2;
    d.d = 2;
    d.values = {0, 0, 3, 4};
    CHECK(distance_matrix(d, Metric::L2)(0, 1) == doctest::Approx(5.0));
    CHECK(distance_matrix(d, Metric::L1)(0, 1) == doctest::Approx(7.0));
    CHECK(distance_matrix(d, Metric::Linf)(0, 1) == doctest::Approx(4.0));

    Dataset single;
    single.n = 1;
    single.d = 3;
    single.values = {1, 2, 3};
    const DistanceMatrix m = distance_matrix(single, Metric::L2);
    CHECK(m.n == 1);
    CHECK(m(0, 0) == 0.0);
}

TEST_CASE("metrics satisfy the norm axioms on random triples") {
    Rng rng(17);
    for (Metric metric : {Metric::L1, Metric::L2, Metric::Linf}) {
        for (int rep = 0; rep < 50; ++rep) {
            const int d = 1 + static_cast<int>(rng.bounded(6));
            const Dataset data = testutil::random_dataset(rng, 3, d);
            const DistanceMatrix m = distance_matrix(data, metric);
            for (int i = 0; i < 3; ++i) {
                CHECK(m(i, i) == 0.0);
                for (int j = 0; j < 3; ++j) {
                    CHECK(m(i, j) == m(j, i));
                    CHECK(m(i, j) >= 0.0);
                }
            }
            CHECK(m(0, 2) <= m(0, 1) + m(1, 2) + 1e-12);
            CHECK(m(0, 1) <= m(0, 2) + m(2, 1) + 1e-12);
            CHECK(m(1, 2) <= m(1, 0) + m(0, 2) + 1e-12);
        }
    }
}

TEST_CASE("rank_table sorts each center by distance then index") {
    // center 0 has distances 2.5, 1.0, 3.0 to points 1, 2, 3
    Dataset d;
    d.n = 4;
    d.d = 1;
    d.values = {0.0, 2.5, 1.0, 3.0};
    const RankTable t = rank_table(distance_matrix(d, Metric::L2));
    const auto row = t.order_row(0);
    CHECK(row[0] == 2);
    CHECK(row[1] == 1);
    CHECK(row[2] == 3);
    CHECK(t.rank_of(0, 2) == 1);
    CHECK(t.rank_of(0, 1) == 2);
    CHECK(t.rank_of(0, 3) == 3);
}

TEST_CASE("tied distances break by ascending index") {
    Dataset d;
    d.n = 4;
    d.d = 2;
    // all points on a unit circle around the origin-point 0
    d.values = {0, 0, 1, 0, 0, 1, -1, 0};
    const RankTable t = rank_table(distance_matrix(d, Metric::L2));
    const auto row = t.order_row(0);
    CHECK(row[0] == 1);
    CHECK(row[1] == 2);
    CHECK(row[2] == 3);
    const auto ties = t.tie_row(0);
    CHECK(ties[0] == 0);
    CHECK(ties[1] == 1);
    CHECK(ties[2] == 1);
}

TEST_CASE("order and rank are exact inverses") {
    Rng rng(18);
    const Dataset d = testutil::random_dataset(rng, 20, 3);
    const RankTable t = rank_table(distance_matrix(d, Metric::L2));
    for (int i = 0; i < 20; ++i) {
        const auto row = t.order_row(i);
        for (int m = 0; m < 19; ++m) CHECK(t.rank_of(i, row[m]) == m + 1);
    }
}

TEST_CASE("rank_table matches the counting oracle, ties included") {
    Rng rng(19);
    for (bool grid : {false, true}) {
        const Dataset d = testutil::random_dataset(rng, 25, 2, grid);
        const DistanceMatrix dist = distance_matrix(d, Metric::L1);
        const RankTable t = rank_table(dist);
        for (int i = 0; i < d.n; ++i) {
            for (int k = 0; k < d.n; ++k) {
                if (k == i) continue;
                int expected = 1;
                for (int other = 0; other < d.n; ++other) {
                    if (other == i || other == k) continue;
                    if (dist(i, other) < dist(i, k) ||
                        (dist(i, other) == dist(i, k) && other < k))
                        ++expected;
                }
                CHECK(t.rank_of(i, k) == expected);
            }
        }
    }
}

TEST_CASE("ranks are invariant under positive rescaling") {
    Rng rng(20);
    for (Metric metric : {Metric::L1, Metric::L2, Metric::Linf}) {
        Dataset d = testutil::random_dataset(rng, 15, 3);
        const RankTable before = rank_table(distance_matrix(d, metric));
        for (auto& v : d.values) v *= 37.5;
        const RankTable after = rank_table(distance_matrix(d, metric));
        CHECK(before.order == after.order);
        CHECK(before.rank == after.rank);
    }
}

TEST_CASE("validate rejects malformed datasets") {
    Dataset d;
    d.n = 1;
    d.d = 1;
    d.values = {std::nan("")};
    CHECK_THROWS_AS(validate(d), std::invalid_argument);
    d.values = {1.0, 2.0};
    CHECK_THROWS_AS(validate(d), std::invalid_argument);
    d.n = 0;
    d.values = {};
    CHECK_THROWS_AS(validate(d), std::invalid_argument);
}
