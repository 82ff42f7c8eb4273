#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "distrank/dataset.hpp"

namespace distrank {

enum class ScenarioKind {
    W,
    Diamond,
    Parabola,
    TwoParabolas,
    Circle,
    FourClouds,
    LogSquare5,
    Multiplicative5,
    Quadratic,
    BlockCorrelated100,
    Mixture1000,
};

enum class NoiseKind { Cauchy, T3, Normal };

// Index sets for the 100-dim block-correlated scenario: the coordinates of Y
// that carry the quadratic signal.
enum class BlockIndexSet {
    First,   // {0..9, 50..54}
    Second,  // {40..49, 90..99}
    None,    // null setting, Y is pure noise
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::FourClouds;

    // quadratic parameters: Y_j = beta1*X_j + beta2*X_j^2 + eps for j < m1
    int m1 = 2;
    double beta1 = 1.0;
    double beta2 = 4.0;
    double sigma2 = 9.0;

    BlockIndexSet index_set = BlockIndexSet::First;
    NoiseKind noise = NoiseKind::T3;

    // Canonical name with parameters, used for table rows and seed streams.
    std::string label() const;

    // (dim of X, dim of Y)
    std::pair<int, int> dims() const;
};

const std::vector<std::string>& scenario_names();
ScenarioKind scenario_kind_from_string(std::string_view name);
std::string_view to_string(ScenarioKind kind);
NoiseKind noise_from_string(std::string_view name);
BlockIndexSet index_set_from_string(std::string_view name);

// Seeded draw of n paired samples (X, Y).  Same (scenario, n, seed) gives
// bit-identical output.
std::pair<Dataset, Dataset> generate(const Scenario& s, int n,
                                     std::uint64_t seed);

}  // namespace distrank
