#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qss/errors.hpp"

namespace qss {

// Deterministic generator (splitmix64). Used instead of <random> so that
// seeded runs produce the same stream on every platform and toolchain.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller.
    double gaussian() {
        double u = 0.0;
        while (u == 0.0) u = uniform01();
        double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
    }

private:
    std::uint64_t state_;
};

// Haar-ish random unit vector: independent complex gaussian entries, normalized.
inline std::vector<std::complex<double>> random_unit_vector(int dim, DeterministicRng& rng) {
    if (dim < 1) throw DimensionMismatchError("random_unit_vector: dim must be >= 1");
    std::vector<std::complex<double>> v(static_cast<std::size_t>(dim));
    double norm_sq = 0.0;
    for (auto& a : v) {
        double re = rng.gaussian();
        double im = rng.gaussian();
        a = {re, im};
        norm_sq += re * re + im * im;
    }
    double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : v) a *= inv;
    return v;
}

}  // namespace qss
