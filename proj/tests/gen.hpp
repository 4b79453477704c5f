#pragma once

#include <cstdint>
#include <random>

// Seeded generators for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    bool coin() { return integer(0, 1) == 1; }
    bool coin(double p) { return uniform(0.0, 1.0) < p; }
};
