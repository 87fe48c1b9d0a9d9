#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bondsim/core.hpp"

namespace testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline std::vector<double> uniform_vec(std::mt19937_64& g, std::size_t n, double lo, double hi) {
    std::vector<double> out(n);
    for (auto& x : out) x = uniform(g, lo, hi);
    return out;
}

inline bondsim::Matrix uniform_matrix(std::mt19937_64& g, std::size_t r, std::size_t c, double lo, double hi) {
    bondsim::Matrix m(r, c);
    for (auto& x : m.flat()) x = uniform(g, lo, hi);
    return m;
}

}  // namespace testing
