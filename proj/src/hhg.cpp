#include "distrank/hhg.hpp"

#include <cmath>
#include <stdexcept>

#include "distrank/inversions.hpp"

namespace distrank {

StatKind stat_kind_from_string(std::string_view name) {
    if (name == "pearson" || name == "chisq") return StatKind::PearsonChiSquare;
    if (name == "lr" || name == "likelihood-ratio") return StatKind::LikelihoodRatio;
    if (name == "dcov") return StatKind::DistanceCovariance;
    throw std::invalid_argument("unknown statistic kind: " + std::string(name));
}

std::string_view to_string(StatKind kind) {
    switch (kind) {
        case StatKind::PearsonChiSquare: return "pearson";
        case StatKind::LikelihoodRatio: return "lr";
        case StatKind::DistanceCovariance: return "dcov";
    }
    return "?";
}

namespace {

inline double pearson_score(double a11, double a12, double a21, double a22) {
    const double r1 = a11 + a12, r2 = a21 + a22;
    const double c1 = a11 + a21, c2 = a12 + a22;
    if (r1 == 0.0 || r2 == 0.0 || c1 == 0.0 || c2 == 0.0) return 0.0;
    const double diff = a12 * a21 - a11 * a22;
    return (r1 + r2) * diff * diff / (r1 * r2 * c1 * c2);
}

inline double lr_score(double a11, double a12, double a21, double a22) {
    const double r1 = a11 + a12, r2 = a21 + a22;
    const double c1 = a11 + a21, c2 = a12 + a22;
    if (r1 == 0.0 || r2 == 0.0 || c1 == 0.0 || c2 == 0.0) return 0.0;
    const double total = r1 + r2;
    double s = 0.0;
    if (a11 > 0.0) s += a11 * std::log(a11 * total / (r1 * c1));
    if (a12 > 0.0) s += a12 * std::log(a12 * total / (r1 * c2));
    if (a21 > 0.0) s += a21 * std::log(a21 * total / (r2 * c1));
    if (a22 > 0.0) s += a22 * std::log(a22 * total / (r2 * c2));
    return 2.0 * s;
}

inline double cell_score(StatKind kind, double a11, double a12, double a21,
                         double a22) {
    return kind == StatKind::PearsonChiSquare
               ? pearson_score(a11, a12, a21, a22)
               : lr_score(a11, a12, a21, a22);
}

void require_pair_tables(const RankTable& rank_x, const RankTable& rank_y,
                         StatKind kind) {
    if (kind != StatKind::PearsonChiSquare && kind != StatKind::LikelihoodRatio)
        throw std::invalid_argument("statistic kind must be pearson or lr");
    if (rank_x.n != rank_y.n)
        throw std::invalid_argument("rank tables have different sample counts");
    if (rank_x.n < 3)
        throw std::invalid_argument("need at least 3 samples");
}

// Reconstructs every (center, probe) table for one center from the rank
// composition.  With p and q the 1-based X- and Y-ranks of the probe around
// the center, the table is
//   a11 = (p-1) - inv(p)   a12 = inv(p)
//   a21 = (q-1) - a11      a22 = (N-2) - a11 - a12 - a21
// because exactly p-1 points strictly precede the probe in X and q-1 in Y
// under the tie-broken total order.
template <typename Visitor>
void for_each_cell_at_center(const RankTable& rank_x, const RankTable& rank_y,
                             int center, std::vector<std::int32_t>& pi,
                             std::vector<std::int32_t>& inv,
                             detail::InversionScratch& scratch,
                             Visitor&& visit) {
    const int n = rank_x.n;
    const int m = n - 1;
    const auto order_x = rank_x.order_row(center);
    const auto* rank_row =
        rank_y.rank.data() + static_cast<std::size_t>(center) * n;
    for (int p = 0; p < m; ++p) pi[p] = rank_row[order_x[p]];
    detail::inversion_counts({pi.data(), static_cast<std::size_t>(m)},
                             {inv.data(), static_cast<std::size_t>(m)}, scratch);
    for (int p = 0; p < m; ++p) {
        const std::int64_t q = pi[p];
        const std::int64_t a12 = inv[p];
        const std::int64_t a11 = p - a12;
        const std::int64_t a21 = (q - 1) - a11;
        const std::int64_t a22 = (n - 2) - a11 - a12 - a21;
        visit(p, order_x[p], a11, a12, a21, a22);
    }
}

}  // namespace

double pearson_s(const ContingencyCounts& c) {
    return pearson_score(static_cast<double>(c.a11), static_cast<double>(c.a12),
                         static_cast<double>(c.a21), static_cast<double>(c.a22));
}

double lr_s(const ContingencyCounts& c) {
    return lr_score(static_cast<double>(c.a11), static_cast<double>(c.a12),
                    static_cast<double>(c.a21), static_cast<double>(c.a22));
}

ContingencyCounts contingency_counts_naive(const RankTable& rank_x,
                                           const RankTable& rank_y, int center,
                                           int probe) {
    const int n = rank_x.n;
    if (rank_y.n != n)
        throw std::invalid_argument("rank tables have different sample counts");
    if (n < 3) throw std::invalid_argument("need at least 3 samples");
    if (center == probe)
        throw std::invalid_argument("center and probe must differ");
    if (center < 0 || center >= n || probe < 0 || probe >= n)
        throw std::invalid_argument("index out of range");

    const auto* rx = rank_x.rank.data() + static_cast<std::size_t>(center) * n;
    const auto* ry = rank_y.rank.data() + static_cast<std::size_t>(center) * n;
    const std::int32_t px = rx[probe];
    const std::int32_t py = ry[probe];

    ContingencyCounts c;
    c.center = center;
    c.probe = probe;
    for (int k = 0; k < n; ++k) {
        if (k == center || k == probe) continue;
        const bool in_x = rx[k] < px;
        const bool in_y = ry[k] < py;
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

StatisticValue hhg_statistic_naive(const RankTable& rank_x,
                                   const RankTable& rank_y, StatKind kind) {
    require_pair_tables(rank_x, rank_y, kind);
    const int n = rank_x.n;
    long double total = 0.0L;
    for (int i = 0; i < n; ++i) {
        long double center_sum = 0.0L;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const ContingencyCounts c = contingency_counts_naive(rank_x, rank_y, i, j);
            center_sum += kind == StatKind::PearsonChiSquare ? pearson_s(c) : lr_s(c);
        }
        total += center_sum;
    }
    return {static_cast<double>(total), n, kind};
}

StatisticValue hhg_statistic_fast(const RankTable& rank_x,
                                  const RankTable& rank_y, StatKind kind) {
    require_pair_tables(rank_x, rank_y, kind);
    const int n = rank_x.n;
    const int m = n - 1;
    std::vector<std::int32_t> pi(m), inv(m);
    detail::InversionScratch scratch;
    long double total = 0.0L;
    for (int i = 0; i < n; ++i) {
        long double center_sum = 0.0L;
        for_each_cell_at_center(
            rank_x, rank_y, i, pi, inv, scratch,
            [&](int, std::int32_t, std::int64_t a11, std::int64_t a12,
                std::int64_t a21, std::int64_t a22) {
                center_sum += cell_score(kind, static_cast<double>(a11),
                                         static_cast<double>(a12),
                                         static_cast<double>(a21),
                                         static_cast<double>(a22));
            });
        total += center_sum;
    }
    return {static_cast<double>(total), n, kind};
}

std::vector<ContingencyCounts> hhg_cells_fast(const RankTable& rank_x,
                                              const RankTable& rank_y) {
    require_pair_tables(rank_x, rank_y, StatKind::PearsonChiSquare);
    const int n = rank_x.n;
    const int m = n - 1;
    std::vector<std::int32_t> pi(m), inv(m);
    detail::InversionScratch scratch;
    std::vector<ContingencyCounts> cells;
    cells.reserve(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        for_each_cell_at_center(
            rank_x, rank_y, i, pi, inv, scratch,
            [&](int, std::int32_t probe, std::int64_t a11, std::int64_t a12,
                std::int64_t a21, std::int64_t a22) {
                ContingencyCounts c;
                c.a11 = a11;
                c.a12 = a12;
                c.a21 = a21;
                c.a22 = a22;
                c.center = i;
                c.probe = probe;
                cells.push_back(c);
            });
    }
    return cells;
}

}  // namespace distrank
