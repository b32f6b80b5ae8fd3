#pragma once

#include "dofpp/parallel.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <vector>

namespace dofpp {

struct SamplePlan {
    std::uint64_t seed = 20240601;
    std::size_t count = 1000;
    int path_grid = 64;   // subordinator steps over [0, s_max]
    double s_max = 0.0;   // operational-time horizon; 0 picks one automatically

    void validate() const;
};

using Rng = std::mt19937_64;

// Samples are generated in fixed-size blocks, each with its own stream
// seeded from (seed, block index). Output does not depend on thread count.
inline constexpr std::size_t kSampleBlock = 2048;

inline Rng block_rng(std::uint64_t seed, std::size_t block)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), 0x5eedu};
    return Rng(seq);
}

// Uniform on (0, 1), 53 random bits.
inline double uniform_open(Rng& rng)
{
    return ((rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double exponential1(Rng& rng)
{
    return -std::log(uniform_open(rng));
}

inline double standard_normal(Rng& rng)
{
    double u1 = uniform_open(rng), u2 = uniform_open(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925 * u2);
}

template <class T, class Draw>
std::vector<T> generate_blocks(std::size_t count, std::uint64_t seed, Draw draw, Exec exec)
{
    std::vector<T> out(count);
    const long nblocks = static_cast<long>((count + kSampleBlock - 1) / kSampleBlock);
    auto run_block = [&](long b) {
        Rng rng = block_rng(seed, static_cast<std::size_t>(b));
        std::size_t lo = static_cast<std::size_t>(b) * kSampleBlock;
        std::size_t hi = std::min(count, lo + kSampleBlock);
        for (std::size_t i = lo; i < hi; ++i) out[i] = draw(rng);
    };
    if (exec == Exec::serial) {
        for (long b = 0; b < nblocks; ++b) run_block(b);
        return out;
    }
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 1)
    for (long b = 0; b < nblocks; ++b) {
        try {
            run_block(b);
        } catch (...) {
#pragma omp critical(dofpp_sample_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

} // namespace dofpp
