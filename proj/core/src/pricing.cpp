#include "spectral/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spectral {

McEstimate mc_estimate(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("mc_estimate: empty sample");
    const auto n = samples.size();
    // Welford
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = samples[i] - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (samples[i] - mean);
    }
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

double bond_price(const AtomicMeasure& mu, double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("bond_price: maturity must be >= 0");
    const auto p = mu.points();
    const auto w = mu.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += w[i] * std::exp(-tau * p[i]);
    return s;
}

YieldCurve yield_curve(const AtomicMeasure& mu, std::span<const double> maturities) {
    YieldCurve c;
    for (std::size_t j = 0; j < maturities.size(); ++j) {
        const double tau = maturities[j];
        if (!(tau > 0.0) || !std::isfinite(tau))
            throw std::invalid_argument("yield_curve: maturity " + std::to_string(tau) + " is not positive");
        if (j > 0 && !(tau > maturities[j - 1]))
            throw std::invalid_argument("yield_curve: maturities must be strictly increasing");
        const double P = bond_price(mu, tau);
        c.maturities.push_back(tau);
        c.prices.push_back(P);
        c.yields.push_back(-std::log(P) / tau);
    }
    return c;
}

namespace {

// Index j with t_j <= T <= t_{j+1}, plus the interpolation weight.
std::pair<std::size_t, double> locate(const SimulationPath& path, double T) {
    const auto t = path.times();
    const double slack = 1e-12 * std::max(1.0, path.horizon());
    if (!(T >= 0.0)) throw std::invalid_argument("discount: T must be >= 0");
    if (T > path.horizon() + slack)
        throw std::invalid_argument("discount: T=" + std::to_string(T) + " beyond path horizon " +
                                    std::to_string(path.horizon()));
    T = std::min(T, path.horizon());
    auto it = std::upper_bound(t.begin(), t.end(), T);
    std::size_t j = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    if (j + 1 >= t.size()) return {t.size() - 1, 0.0};
    return {j, (T - t[j]) / (t[j + 1] - t[j])};
}

}  // namespace

double rate_at(const SimulationPath& path, double T) {
    const auto [j, theta] = locate(path, T);
    const auto R = path.rates();
    if (theta == 0.0) return R[j];
    return R[j] + theta * (R[j + 1] - R[j]);
}

double discount_factor(const SimulationPath& path, double T) {
    const auto [j, theta] = locate(path, T);
    const auto t = path.times();
    const auto R = path.rates();
    double integral = 0.0;
    for (std::size_t i = 0; i < j; ++i) integral += 0.5 * (R[i] + R[i + 1]) * (t[i + 1] - t[i]);
    if (theta > 0.0) {
        const double h = T - t[j];
        const double RT = R[j] + theta * (R[j + 1] - R[j]);
        integral += 0.5 * (R[j] + RT) * h;
    }
    return std::exp(-integral);
}

McEstimate martingale_residual(std::span<const double> discounts, double bond_price_0) {
    McEstimate e = mc_estimate(discounts);
    e.mean -= bond_price_0;
    return e;
}

McEstimate martingale_residual(const Ensemble& ensemble, const AtomicMeasure& mu0, double T) {
    std::vector<double> d;
    d.reserve(ensemble.paths.size());
    for (const auto& p : ensemble.paths) d.push_back(discount_factor(p, T));
    return martingale_residual(d, bond_price(mu0, T));
}

McEstimate supermartingale_check(std::span<const double> terminal_rates, double initial_rate) {
    McEstimate e = mc_estimate(terminal_rates);
    e.mean -= initial_rate;
    return e;
}

McEstimate supermartingale_check(const Ensemble& ensemble, double T) {
    if (ensemble.paths.empty()) throw std::invalid_argument("supermartingale_check: empty ensemble");
    std::vector<double> r;
    r.reserve(ensemble.paths.size());
    for (const auto& p : ensemble.paths) r.push_back(rate_at(p, T));
    return supermartingale_check(r, ensemble.paths.front().rates()[0]);
}

}  // namespace spectral
