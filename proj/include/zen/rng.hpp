#pragma once

#include <cmath>
#include <cstdint>

#include "zen/common.hpp"

namespace zen {

// Counter-based random streams: every variate is a pure function of
// (seed, stream, index), so results do not depend on thread scheduling and a
// run can be reproduced from the seed alone.

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

} // namespace detail

/// One named stream of a counter-based generator.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    /// Uniform on (0,1); never returns exactly 0 or 1.
    double uniform(std::uint64_t index) const {
        std::uint64_t bits = detail::mix3(seed_, stream_, index);
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi].
    double uniform(std::uint64_t index, double lo, double hi) const {
        return lo + (hi - lo) * uniform(index);
    }

    /// Standard normal via Box-Muller; consumes indices 2k and 2k+1.
    double normal(std::uint64_t k) const {
        double u1 = uniform(2 * k);
        double u2 = uniform(2 * k + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

/// Stable stream ids for the operations that consume randomness.
namespace stream_id {
inline constexpr std::uint64_t pullback_sampler = 1;
inline constexpr std::uint64_t pushforward_sampler = 2;
inline constexpr std::uint64_t causality_trials = 3;
inline constexpr std::uint64_t test_generators = 100;
} // namespace stream_id

} // namespace zen
