#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace distrank {

// Checks that pi holds each of 1..M exactly once.
bool is_permutation_1m(std::span<const std::int32_t> pi);

// inv[j] = #{k < j : pi[k] > pi[j]}, the O(M^2) definition.  Test oracle.
std::vector<std::int32_t> inversions_naive(std::span<const std::int32_t> pi);

// Same counts in O(M log M) by merge sort; works for any M, not only powers
// of two.  Counts are indexed by the input position of each element.
std::vector<std::int32_t> inversions_mergesort(std::span<const std::int32_t> pi);

namespace detail {

// Reusable buffers for the merge sort; sized on first use.
struct InversionScratch {
    std::vector<std::int32_t> values;
    std::vector<std::int32_t> source;
    std::vector<std::int32_t> tmp_values;
    std::vector<std::int32_t> tmp_source;
};

// No validation; pi must be a permutation of 1..M.  Writes to out[0..M).
void inversion_counts(std::span<const std::int32_t> pi,
                      std::span<std::int32_t> out, InversionScratch& scratch);

}  // namespace detail

}  // namespace distrank
