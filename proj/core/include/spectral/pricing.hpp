#pragma once

// Zero-coupon bonds and Monte Carlo checks of the term-structure identities
//
//     P(t, T) = int exp(-(T - t) r) mu_t(dr),
//     E[ exp(-int_0^T R_s ds) ] = P(0, T),
//     R_t a supermartingale when mu_t >= 0.

#include <span>
#include <vector>

#include "spectral/measure_space.hpp"
#include "spectral/sde_solver.hpp"

namespace spectral {

struct YieldCurve {
    std::vector<double> maturities;
    std::vector<double> prices;
    std::vector<double> yields;  // -ln P / tau
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Sample mean and standard error of the mean. Throws on an empty sample.
McEstimate mc_estimate(std::span<const double> samples);

/// sum_i w_i exp(-tau r_i). Throws std::invalid_argument for tau < 0.
double bond_price(const AtomicMeasure& mu, double tau);

/// Throws std::invalid_argument for a non-positive or unsorted maturity.
YieldCurve yield_curve(const AtomicMeasure& mu, std::span<const double> maturities);

/// exp(-int_0^T R_t dt) with the trapezoid rule on the path grid; a T strictly
/// inside a step uses the linearly interpolated rate. Throws
/// std::invalid_argument when T is negative or beyond the path horizon.
double discount_factor(const SimulationPath& path, double T);

/// Short rate at time T, linearly interpolated between grid points.
double rate_at(const SimulationPath& path, double T);

/// mean(discount_factor(path, T)) - P(0, T), with the standard error of the
/// discount sample.
McEstimate martingale_residual(const Ensemble& ensemble, const AtomicMeasure& mu0, double T);
McEstimate martingale_residual(std::span<const double> discounts, double bond_price_0);

/// mean(R_T) - R_0 with its standard error.
McEstimate supermartingale_check(const Ensemble& ensemble, double T);
McEstimate supermartingale_check(std::span<const double> terminal_rates, double initial_rate);

}  // namespace spectral
