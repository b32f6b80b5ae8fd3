#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace testing {

inline double rel_err(double got, double want)
{
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

// Deterministic source of random test arguments.
struct Draws {
    std::mt19937_64 rng;
    explicit Draws(unsigned long seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
};

} // namespace testing

#define CHECK_REL(got, want, tol) CHECK(testing::rel_err((got), (want)) <= (tol))
#define CHECK_ABS(got, want, tol) CHECK(std::fabs((got) - (want)) <= (tol))
