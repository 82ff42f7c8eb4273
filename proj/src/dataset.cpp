#include "distrank/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace distrank {

Metric metric_from_string(std::string_view name) {
    if (name == "l1" || name == "L1") return Metric::L1;
    if (name == "l2" || name == "L2") return Metric::L2;
    if (name == "linf" || name == "Linf" || name == "inf") return Metric::Linf;
    throw std::invalid_argument("unknown metric: " + std::string(name) +
                                " (expected l1, l2, or linf)");
}

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::L1: return "l1";
        case Metric::L2: return "l2";
        case Metric::Linf: return "linf";
    }
    return "?";
}

void validate(const Dataset& data) {
    if (data.n < 1 || data.d < 1)
        throw std::invalid_argument("dataset must have n >= 1 and d >= 1");
    if (data.values.size() !=
        static_cast<std::size_t>(data.n) * static_cast<std::size_t>(data.d))
        throw std::invalid_argument("dataset value buffer does not match n*d");
    for (double v : data.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("dataset contains a non-finite value");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == delim) {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

}  // namespace

Dataset load_csv(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    Dataset data;
    std::string line;
    std::size_t line_no = 0;
    bool checked_header = false;
    int columns = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        const auto fields = split_fields(line, delimiter);

        if (!checked_header) {
            checked_header = true;
            bool all_numeric = true;
            double tmp;
            for (auto f : fields)
                if (!parse_double(f, tmp)) {
                    all_numeric = false;
                    break;
                }
            if (!all_numeric) continue;  // header row
        }

        if (columns == 0) {
            columns = static_cast<int>(fields.size());
        } else if (static_cast<int>(fields.size()) != columns) {
            std::ostringstream msg;
            msg << path << ":" << line_no << ": ragged row with "
                << fields.size() << " fields, expected " << columns;
            throw DataError(msg.str());
        }

        for (std::size_t c = 0; c < fields.size(); ++c) {
            double v;
            if (!parse_double(fields[c], v)) {
                std::ostringstream msg;
                msg << path << ":" << line_no << ": non-numeric value '"
                    << std::string(trim(fields[c])) << "' in column " << c + 1;
                throw DataError(msg.str());
            }
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << path << ":" << line_no << ": non-finite value in column "
                    << c + 1;
                throw DataError(msg.str());
            }
            data.values.push_back(v);
        }
        ++data.n;
    }

    if (data.n == 0) throw DataError("no data rows in file: " + path);
    data.d = columns;
    validate(data);
    return data;
}

namespace {

double distance(std::span<const double> a, std::span<const double> b, Metric m) {
    switch (m) {
        case Metric::L1: {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
            return s;
        }
        case Metric::L2: {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double dk = a[k] - b[k];
                s += dk * dk;
            }
            return std::sqrt(s);
        }
        case Metric::Linf: {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k)
                s = std::max(s, std::abs(a[k] - b[k]));
            return s;
        }
    }
    return 0.0;
}

}  // namespace

DistanceMatrix distance_matrix(const Dataset& data, Metric metric) {
    validate(data);
    const int n = data.n;
    DistanceMatrix out;
    out.n = n;
    out.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dij = distance(data.row(i), data.row(j), metric);
            out(i, j) = dij;
            out(j, i) = dij;
        }
    }
    return out;
}

RankTable rank_table(const DistanceMatrix& dist) {
    const int n = dist.n;
    if (n < 1) throw std::invalid_argument("distance matrix is empty");

    RankTable table;
    table.n = n;
    const std::size_t m = static_cast<std::size_t>(n) * (n - 1);
    table.order.resize(m);
    table.tied_with_prev.assign(m, 0);
    table.rank.assign(static_cast<std::size_t>(n) * n, 0);

    std::vector<std::int32_t> idx(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) {
        int pos = 0;
        for (int k = 0; k < n; ++k)
            if (k != i) idx[pos++] = k;
        const double* row = dist.dist.data() + static_cast<std::size_t>(i) * n;
        std::sort(idx.begin(), idx.end(), [row](std::int32_t a, std::int32_t b) {
            if (row[a] != row[b]) return row[a] < row[b];
            return a < b;
        });
        auto* order_row = table.order.data() + static_cast<std::size_t>(i) * (n - 1);
        auto* tie_row =
            table.tied_with_prev.data() + static_cast<std::size_t>(i) * (n - 1);
        auto* rank_row = table.rank.data() + static_cast<std::size_t>(i) * n;
        for (int p = 0; p < n - 1; ++p) {
            order_row[p] = idx[p];
            rank_row[idx[p]] = p + 1;
            if (p > 0) tie_row[p] = row[idx[p]] == row[idx[p - 1]] ? 1 : 0;
        }
    }
    return table;
}

}  // namespace distrank
