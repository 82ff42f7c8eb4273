#include "distrank/inversions.hpp"

#include <stdexcept>

namespace distrank {

bool is_permutation_1m(std::span<const std::int32_t> pi) {
    const std::size_t m = pi.size();
    std::vector<bool> seen(m, false);
    for (std::int32_t v : pi) {
        if (v < 1 || static_cast<std::size_t>(v) > m) return false;
        if (seen[v - 1]) return false;
        seen[v - 1] = true;
    }
    return true;
}

std::vector<std::int32_t> inversions_naive(std::span<const std::int32_t> pi) {
    if (!is_permutation_1m(pi))
        throw std::invalid_argument("input is not a permutation of 1..M");
    const std::size_t m = pi.size();
    std::vector<std::int32_t> inv(m, 0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < j; ++k)
            if (pi[k] > pi[j]) ++inv[j];
    return inv;
}

namespace detail {

namespace {

// Sorts values[lo, hi) with carried source positions; every element taken
// from the right half while left elements remain was inverted with each of
// them, so its count grows by the number still pending on the left.
void merge_count(std::int32_t* values, std::int32_t* source,
                 std::int32_t* tmp_values, std::int32_t* tmp_source,
                 std::span<std::int32_t> counts, std::size_t lo,
                 std::size_t hi) {
    if (hi - lo <= 1) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    merge_count(values, source, tmp_values, tmp_source, counts, lo, mid);
    merge_count(values, source, tmp_values, tmp_source, counts, mid, hi);

    std::size_t left = lo, right = mid, out = lo;
    while (left < mid && right < hi) {
        if (values[left] < values[right]) {
            tmp_values[out] = values[left];
            tmp_source[out] = source[left];
            ++left;
        } else {
            counts[source[right]] += static_cast<std::int32_t>(mid - left);
            tmp_values[out] = values[right];
            tmp_source[out] = source[right];
            ++right;
        }
        ++out;
    }
    while (left < mid) {
        tmp_values[out] = values[left];
        tmp_source[out] = source[left];
        ++left;
        ++out;
    }
    while (right < hi) {
        tmp_values[out] = values[right];
        tmp_source[out] = source[right];
        ++right;
        ++out;
    }
    for (std::size_t i = lo; i < hi; ++i) {
        values[i] = tmp_values[i];
        source[i] = tmp_source[i];
    }
}

}  // namespace

void inversion_counts(std::span<const std::int32_t> pi,
                      std::span<std::int32_t> out, InversionScratch& scratch) {
    const std::size_t m = pi.size();
    if (scratch.values.size() < m) {
        scratch.values.resize(m);
        scratch.source.resize(m);
        scratch.tmp_values.resize(m);
        scratch.tmp_source.resize(m);
    }
    for (std::size_t j = 0; j < m; ++j) {
        scratch.values[j] = pi[j];
        scratch.source[j] = static_cast<std::int32_t>(j);
        out[j] = 0;
    }
    merge_count(scratch.values.data(), scratch.source.data(),
                scratch.tmp_values.data(), scratch.tmp_source.data(), out, 0, m);
}

}  // namespace detail

std::vector<std::int32_t> inversions_mergesort(std::span<const std::int32_t> pi) {
    if (!is_permutation_1m(pi))
        throw std::invalid_argument("input is not a permutation of 1..M");
    std::vector<std::int32_t> inv(pi.size());
    detail::InversionScratch scratch;
    detail::inversion_counts(pi, inv, scratch);
    return inv;
}

}  // namespace distrank
