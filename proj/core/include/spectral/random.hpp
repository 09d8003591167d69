#pragma once

// Counter-based random numbers.
//
// Every draw is a pure function of (stream key, counter), so Monte Carlo
// results do not depend on execution order or thread count. Path streams are
// derived from (master seed, path index); Brownian increments from
// (path stream, step, factor).

#include <cmath>
#include <cstdint>
#include <numbers>

namespace spectral {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Maps 64 random bits to the open interval (0, 1).
constexpr double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Stream key for path `path_index` under `master_seed`.
constexpr std::uint64_t path_stream(std::uint64_t master_seed, std::uint64_t path_index) noexcept {
    return splitmix64(master_seed ^ splitmix64(path_index ^ 0x5851f42d4c957f2dULL));
}

constexpr std::uint64_t counter_bits(std::uint64_t key, std::uint64_t counter) noexcept {
    return splitmix64(key ^ splitmix64(counter));
}

inline double counter_uniform(std::uint64_t key, std::uint64_t counter) noexcept {
    return to_open_unit(counter_bits(key, counter));
}

/// Standard normal via Box-Muller on the counter pair (2c, 2c+1).
inline double counter_normal(std::uint64_t key, std::uint64_t counter) noexcept {
    const double u1 = counter_uniform(key, 2 * counter);
    const double u2 = counter_uniform(key, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Sequential generator for diagnostics that just need a reproducible
/// stream of variates (random test measures, Lipschitz probes).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        const std::uint64_t out = splitmix64(state_);
        state_ += 0x9e3779b97f4a7c15ULL;
        return out;
    }
    double uniform() noexcept { return to_open_unit(next()); }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) noexcept { return lo + next() % (hi - lo + 1); }
    double exponential() noexcept { return -std::log(uniform()); }
    double normal() noexcept {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace spectral
