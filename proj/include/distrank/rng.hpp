#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace distrank {

// splitmix64 finalizer; full-avalanche mixing of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derives an independent stream seed from a base seed and a path of
// components (replicate index, simulation index, hashed labels, ...).
// Scheduling-independent: the stream depends only on (seed, path).
inline std::uint64_t derive_stream(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t c : path) h = mix64(h ^ c);
    return h;
}

// Seeded generator wrapping std::mt19937_64 (the engine is fully specified
// by the standard, so sequences are identical across platforms).  All
// distributions are implemented here rather than with <random> distribution
// templates, whose output is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform on [0, 1), 53-bit resolution
    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform on (lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // uniform on [0, n), unbiased via rejection
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = eng_();
            if (r >= threshold) return r % n;
        }
    }

    // standard normal, Marsaglia polar method with cached spare
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * u01() - 1.0;
            v = 2.0 * u01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // standard Cauchy as a ratio of independent standard normals
    double cauchy() {
        for (;;) {
            const double a = normal();
            const double b = normal();
            if (b != 0.0) return a / b;
        }
    }

    // Student t with 3 degrees of freedom: N / sqrt(chi2_3 / 3)
    double student_t3() {
        const double z = normal();
        const double g1 = normal(), g2 = normal(), g3 = normal();
        const double chi2 = g1 * g1 + g2 * g2 + g3 * g3;
        return z / std::sqrt(chi2 / 3.0);
    }

    // Fisher-Yates; returns a uniform permutation of {0,...,n-1}
    std::vector<std::int32_t> permutation(std::size_t n) {
        std::vector<std::int32_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::int32_t>(i);
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace distrank
