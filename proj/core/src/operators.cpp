#include "spectral/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace spectral {

DriftConstants drift_constants(const Interval& interval) {
    const double L = interval.length();
    const double bound_R = std::sqrt(L);
    const double bound_rho = std::sqrt(2.0 * (L * L + 2.0 * L + 2.0));
    const double c1 = 2.0 * std::sqrt(2.0 * L * (1.0 + L)) + bound_rho;
    return {interval, bound_R, bound_rho, c1};
}

double short_rate(const AtomicMeasure& mu) {
    const auto p = mu.points();
    const auto w = mu.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += w[i] * p[i];
    return s;
}

AtomicMeasure rho_star(const AtomicMeasure& mu) {
    std::vector<double> w(mu.weights().begin(), mu.weights().end());
    const auto p = mu.points();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= p[i];
    return mu.with_weights(std::move(w));
}

AtomicMeasure star_product(const AtomicMeasure& mu, const AtomicMeasure& nu) {
    if (!(mu.interval() == nu.interval())) throw std::invalid_argument("star_product: interval mismatch");
    return nu.scaled(short_rate(mu));
}

AtomicMeasure drift(const AtomicMeasure& mu) {
    const double R = short_rate(mu);
    std::vector<double> w(mu.weights().begin(), mu.weights().end());
    const auto p = mu.points();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= (R - p[i]);
    return mu.with_weights(std::move(w));
}

}  // namespace spectral
