#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace distrank {

// User-facing input problems (malformed CSV, mismatched files, ...).
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

enum class Metric { L1, L2, Linf };

Metric metric_from_string(std::string_view name);
std::string_view to_string(Metric m);

// N x d matrix of finite reals, rows are samples.
struct Dataset {
    int n = 0;
    int d = 0;
    std::vector<double> values;  // row-major, n*d

    std::span<const double> row(int i) const {
        return {values.data() + static_cast<std::size_t>(i) * d,
                static_cast<std::size_t>(d)};
    }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * d + j]; }
    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * d + j];
    }
};

// Validates shape and finiteness; throws std::invalid_argument.
void validate(const Dataset& data);

// Symmetric N x N matrix of pairwise distances, zero diagonal.
struct DistanceMatrix {
    int n = 0;
    std::vector<double> dist;  // row-major, n*n

    double operator()(int i, int j) const {
        return dist[static_cast<std::size_t>(i) * n + j];
    }
    double& operator()(int i, int j) {
        return dist[static_cast<std::size_t>(i) * n + j];
    }
};

// Per-center total ordering of the other N-1 points by (distance, index).
// `rank` is the inverse map: rank_of(i, k) is the 1-based position of k in
// center i's ordering; 0 on the diagonal.  `tied_with_prev` marks positions
// whose distance from the center equals the previous position's distance,
// which is what relabeling needs to reproduce the tie-break exactly.
struct RankTable {
    int n = 0;
    std::vector<std::int32_t> order;           // n rows x (n-1)
    std::vector<std::int32_t> rank;            // n x n
    std::vector<std::uint8_t> tied_with_prev;  // n rows x (n-1), [i][0] = 0

    std::span<const std::int32_t> order_row(int i) const {
        return {order.data() + static_cast<std::size_t>(i) * (n - 1),
                static_cast<std::size_t>(n - 1)};
    }
    std::span<const std::uint8_t> tie_row(int i) const {
        return {tied_with_prev.data() + static_cast<std::size_t>(i) * (n - 1),
                static_cast<std::size_t>(n - 1)};
    }
    std::int32_t rank_of(int i, int k) const {
        return rank[static_cast<std::size_t>(i) * n + k];
    }
};

// Loads a delimiter-separated numeric file; a single non-numeric first row
// is treated as a header and skipped.
Dataset load_csv(const std::string& path, char delimiter = ',');

DistanceMatrix distance_matrix(const Dataset& data, Metric metric);

RankTable rank_table(const DistanceMatrix& dist);

}  // namespace distrank
