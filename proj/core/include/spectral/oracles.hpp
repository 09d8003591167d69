#pragma once

// Independent ground truth used to check the solvers.
//
// Without noise the equation is solved by exponential tilting,
//     mu_t(dr) = exp(-r t) mu_0(dr) / G_t,   G_t = int exp(-r t) mu_0(dr),
// with R_t = -d/dt log G_t and exp(-int_t^T R_u du) = G_T / G_t.

#include <span>
#include <utility>

#include "spectral/measure_space.hpp"

namespace spectral::oracles {

/// G_t = int exp(-r t) mu0(dr).
double flow_normalizer(const AtomicMeasure& mu0, double t);

/// Throws std::invalid_argument for t < 0 and std::domain_error if G_t <= 0
/// (possible only for signed mu0).
AtomicMeasure deterministic_flow(const AtomicMeasure& mu0, double t);

double deterministic_short_rate(const AtomicMeasure& mu0, double t);

/// (G_T / G_t, P computed from mu_t at maturity T - t). Requires 0 <= t <= T.
std::pair<double, double> flow_discount_identity(const AtomicMeasure& mu0, double t, double T);

/// Midpoint-rule evaluation of |mu|^2_{H*} with `cells` cells on each side of
/// the origin, evaluating the tail distribution functions by direct summation.
double hstar_norm_quadrature(const AtomicMeasure& mu, int cells);

struct NormEquivalence {
    double c;
    double C;
};

/// Constants with c sum_i |z_i| <= |sum_i z_i delta_{r_i}|_HS <= C sum_i |z_i|.
/// C = max_i |delta_{r_i}|_{H*}; c = min_j phi_j(r_j) / |phi_j|_H / N with phi_j
/// the hat on (r_{j-1}, r_{j+1}) peaking at r_j. The boundary hats use the
/// interval ends in place of the missing neighbours, and have no left (right)
/// side when r_1 = -a (r_N = b).
/// Throws std::invalid_argument for an empty, unsorted or duplicate support.
NormEquivalence norm_equivalence_constants(const Interval& interval, std::span<const double> support);

/// The hat function phi_j described above.
PiecewiseLinearFn support_hat(const Interval& interval, std::span<const double> support, std::size_t j);

}  // namespace spectral::oracles
