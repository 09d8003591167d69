#include "spectral/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spectral/operators.hpp"
#include "spectral/pricing.hpp"

namespace spectral::oracles {

double flow_normalizer(const AtomicMeasure& mu0, double t) {
    const auto p = mu0.points();
    const auto w = mu0.weights();
    double G = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) G += w[i] * std::exp(-p[i] * t);
    return G;
}

AtomicMeasure deterministic_flow(const AtomicMeasure& mu0, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("deterministic_flow: t must be >= 0");
    const double G = flow_normalizer(mu0, t);
    if (!(G > 0.0)) throw std::domain_error("deterministic_flow: normalizer G_t is not positive");
    const auto p = mu0.points();
    std::vector<double> w(mu0.weights().begin(), mu0.weights().end());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = w[i] * std::exp(-p[i] * t) / G;
    return mu0.with_weights(std::move(w));
}

double deterministic_short_rate(const AtomicMeasure& mu0, double t) {
    return short_rate(deterministic_flow(mu0, t));
}

std::pair<double, double> flow_discount_identity(const AtomicMeasure& mu0, double t, double T) {
    if (!(t >= 0.0 && t <= T)) throw std::invalid_argument("flow_discount_identity: need 0 <= t <= T");
    const double Gt = flow_normalizer(mu0, t);
    const double GT = flow_normalizer(mu0, T);
    if (!(Gt > 0.0) || !(GT > 0.0)) throw std::domain_error("flow_discount_identity: normalizer not positive");
    return {GT / Gt, bond_price(deterministic_flow(mu0, t), T - t)};
}

double hstar_norm_quadrature(const AtomicMeasure& mu, int cells) {
    if (cells < 1) throw std::invalid_argument("hstar_norm_quadrature: cells must be >= 1");
    const auto p = mu.points();
    const auto w = mu.weights();
    const double a = mu.interval().a();
    const double b = mu.interval().b();

    double mass = 0.0;
    for (double x : w) mass += x;

    auto below = [&](double r) {  // mu[-a, r)
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] < r) s += w[i];
        return s;
    };
    auto above = [&](double r) {  // mu(r, b]
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > r) s += w[i];
        return s;
    };

    double left = 0.0;
    if (a > 0.0) {
        const double h = a / cells;
        for (int c = 0; c < cells; ++c) {
            const double v = below(-a + (c + 0.5) * h);
            left += v * v * h;
        }
    }
    double right = 0.0;
    if (b > 0.0) {
        const double h = b / cells;
        for (int c = 0; c < cells; ++c) {
            const double v = above((c + 0.5) * h);
            right += v * v * h;
        }
    }
    return mass * mass + left + right;
}

namespace {

void check_support(const Interval& interval, std::span<const double> support) {
    if (support.empty()) throw std::invalid_argument("norm equivalence: empty support");
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!interval.contains(support[i])) throw std::invalid_argument("norm equivalence: atom outside interval");
        if (i > 0 && !(support[i] > support[i - 1]))
            throw std::invalid_argument("norm equivalence: support must be sorted without duplicates");
    }
}

}  // namespace

PiecewiseLinearFn support_hat(const Interval& interval, std::span<const double> support, std::size_t j) {
    check_support(interval, support);
    if (j >= support.size()) throw std::invalid_argument("support_hat: index out of range");
    const double left = j > 0 ? support[j - 1] : interval.lower();
    const double right = j + 1 < support.size() ? support[j + 1] : interval.upper();
    return PiecewiseLinearFn::hat(left, support[j], right, 1.0);
}

NormEquivalence norm_equivalence_constants(const Interval& interval, std::span<const double> support) {
    check_support(interval, support);
    double C = 0.0;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < support.size(); ++j) {
        C = std::max(C, hstar_norm(AtomicMeasure::dirac(interval, support[j])));
        const PiecewiseLinearFn phi = support_hat(interval, support, j);
        ratio = std::min(ratio, std::abs(phi(support[j])) / phi.h_norm());
    }
    return {ratio / static_cast<double>(support.size()), C};
}

}  // namespace spectral::oracles
