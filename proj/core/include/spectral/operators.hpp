#pragma once

// Drift machinery of the measure-valued short-rate equation.
//
//   R(mu)        = int r mu(dr)                 short rate
//   (rho* mu)    = r mu(dr)                     multiplication by r
//   (mu * nu)    = R(mu) nu(dr)                 star product
//   F(mu)        = (R(mu) - rho*) mu            drift
//
// On atomic measures F keeps the support and maps w_i to w_i (R(mu) - r_i).

#include "spectral/measure_space.hpp"

namespace spectral {

/// Operator bounds on I = [-a, b] with L = a + b:
///   |R(mu)|            <= bound_R   |mu|,   bound_R   = sqrt(L)
///   |rho* mu|          <= bound_rho |mu|,   bound_rho = sqrt(2 (L^2 + 2L + 2))
///   |F(mu) - F(nu)|    <= c1 |mu - nu|  for probability mu, nu,
///   c1 = 2 sqrt(2 L (1 + L)) + bound_rho.
struct DriftConstants {
    Interval interval;
    double bound_R;
    double bound_rho;
    double c1;
};

DriftConstants drift_constants(const Interval& interval);

double short_rate(const AtomicMeasure& mu);
AtomicMeasure rho_star(const AtomicMeasure& mu);

/// R(mu) nu. Throws std::invalid_argument on interval mismatch.
AtomicMeasure star_product(const AtomicMeasure& mu, const AtomicMeasure& nu);

/// F(mu) = (R(mu) - rho*) mu. Defined for any signed atomic measure;
/// zero-weight atoms are retained.
AtomicMeasure drift(const AtomicMeasure& mu);

}  // namespace spectral
