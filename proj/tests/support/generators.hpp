#pragma once

// Hand-rolled generators for property tests. Every generator draws from a
// SplitMix64 so failures reproduce from the printed seed.

#include <algorithm>
#include <vector>

#include "spectral/measure_space.hpp"
#include "spectral/random.hpp"

namespace spectral::testing {

inline Interval random_interval(SplitMix64& rng) {
    // a may be zero (one-sided interval) about a quarter of the time
    const double a = rng.uniform() < 0.25 ? 0.0 : rng.uniform(0.1, 2.0);
    const double b = rng.uniform(0.1, 2.0);
    return Interval(a, b);
}

inline std::vector<double> random_points(SplitMix64& rng, const Interval& I, std::size_t n) {
    std::vector<double> p(n);
    for (auto& r : p) {
        // occasionally pin to an endpoint or the origin
        const double u = rng.uniform();
        r = u < 0.05 ? I.lower() : u < 0.1 ? I.upper() : u < 0.15 ? 0.0 : rng.uniform(I.lower(), I.upper());
    }
    return p;
}

inline std::vector<double> dirichlet(SplitMix64& rng, std::size_t n) {
    std::vector<double> w(n);
    double s = 0.0;
    for (auto& x : w) s += (x = rng.exponential());
    for (auto& x : w) x /= s;
    return w;
}

/// Signed atomic measure with 1..max_atoms atoms and weights in [-1, 1].
inline AtomicMeasure random_signed(SplitMix64& rng, const Interval& I, std::size_t max_atoms = 20) {
    const std::size_t n = rng.integer(1, max_atoms);
    std::vector<double> w(n);
    for (auto& x : w) x = rng.uniform(-1.0, 1.0);
    return AtomicMeasure(I, random_points(rng, I, n), w);
}

inline AtomicMeasure random_probability(SplitMix64& rng, const Interval& I, std::size_t max_atoms = 20) {
    const std::size_t n = rng.integer(1, max_atoms);
    return AtomicMeasure(I, random_points(rng, I, n), dirichlet(rng, n));
}

/// Sorted distinct support of n points inside I.
inline std::vector<double> random_support(SplitMix64& rng, const Interval& I, std::size_t n) {
    std::vector<double> p;
    while (p.size() < n) {
        p = random_points(rng, I, n);
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    return p;
}

inline PiecewiseLinearFn random_function(SplitMix64& rng, const Interval& I, std::size_t max_knots = 8) {
    auto k = random_support(rng, I, rng.integer(1, max_knots));
    std::vector<double> v(k.size());
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    return PiecewiseLinearFn(k, v);
}

inline std::vector<double> random_vector(SplitMix64& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

}  // namespace spectral::testing
