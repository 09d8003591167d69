#include "spectral/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spectral {

Interval::Interval(double a, double b) : a_(a), b_(b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || a < 0.0 || b < 0.0 || !(a + b > 0.0)) {
        throw std::invalid_argument("interval [-a,b] needs a >= 0, b >= 0, a + b > 0 (got a=" +
                                    std::to_string(a) + ", b=" + std::to_string(b) + ")");
    }
}

// ---------------------------------------------------------------------------
// PiecewiseLinearFn

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.empty()) throw std::invalid_argument("piecewise-linear function needs at least one knot");
    if (knots_.size() != values_.size())
        throw std::invalid_argument("piecewise-linear function: knots and values differ in length");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i]) || !std::isfinite(values_[i]))
            throw std::invalid_argument("piecewise-linear function: non-finite knot or value");
        if (i > 0 && !(knots_[i] > knots_[i - 1]))
            throw std::invalid_argument("piecewise-linear function: knots must be strictly increasing");
    }
}

PiecewiseLinearFn PiecewiseLinearFn::constant(double c) { return PiecewiseLinearFn({0.0}, {c}); }

PiecewiseLinearFn PiecewiseLinearFn::identity(const Interval& interval) {
    return PiecewiseLinearFn({interval.lower(), interval.upper()}, {interval.lower(), interval.upper()});
}

PiecewiseLinearFn PiecewiseLinearFn::hat(double left, double peak, double right, double height) {
    if (!(left <= peak && peak <= right)) throw std::invalid_argument("hat: need left <= peak <= right");
    std::vector<double> k;
    std::vector<double> v;
    if (left < peak) {
        k.push_back(left);
        v.push_back(0.0);
    }
    k.push_back(peak);
    v.push_back(height);
    if (peak < right) {
        k.push_back(right);
        v.push_back(0.0);
    }
    return PiecewiseLinearFn(std::move(k), std::move(v));
}

double PiecewiseLinearFn::operator()(double r) const {
    if (r <= knots_.front()) return values_.front();
    if (r >= knots_.back()) return values_.back();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
    const auto j = static_cast<std::size_t>(it - knots_.begin());
    const double x0 = knots_[j - 1], x1 = knots_[j];
    const double t = (r - x0) / (x1 - x0);
    return values_[j - 1] + t * (values_[j] - values_[j - 1]);
}

double PiecewiseLinearFn::h_norm_squared() const {
    const double at0 = (*this)(0.0);
    double energy = 0.0;
    for (std::size_t j = 1; j < knots_.size(); ++j) {
        const double dv = values_[j] - values_[j - 1];
        energy += dv * dv / (knots_[j] - knots_[j - 1]);
    }
    return at0 * at0 + energy;
}

double PiecewiseLinearFn::h_norm() const { return std::sqrt(h_norm_squared()); }

double PiecewiseLinearFn::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------------------
// AtomicMeasure

AtomicMeasure::AtomicMeasure(Interval interval, std::span<const double> points, std::span<const double> weights)
    : interval_(interval) {
    if (points.size() != weights.size())
        throw std::invalid_argument("atomic measure: " + std::to_string(points.size()) + " points but " +
                                    std::to_string(weights.size()) + " weights");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i]) || !std::isfinite(weights[i]))
            throw std::invalid_argument("atomic measure: non-finite point or weight");
        if (!interval.contains(points[i]))
            throw std::domain_error("atomic measure: point " + std::to_string(points[i]) + " outside [" +
                                    std::to_string(interval.lower()) + ", " + std::to_string(interval.upper()) +
                                    "]");
    }
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return points[i] < points[j]; });

    points_.reserve(points.size());
    weights_.reserve(points.size());
    for (auto i : order) {
        if (!points_.empty() && points_.back() == points[i]) {
            weights_.back() += weights[i];
        } else {
            points_.push_back(points[i]);
            weights_.push_back(weights[i]);
        }
    }
}

AtomicMeasure AtomicMeasure::zero(Interval interval) { return AtomicMeasure(interval); }

AtomicMeasure AtomicMeasure::dirac(Interval interval, double r) {
    const double p[] = {r};
    const double w[] = {1.0};
    return AtomicMeasure(interval, p, w);
}

AtomicMeasure AtomicMeasure::with_weights(std::vector<double> weights) const {
    if (weights.size() != points_.size())
        throw std::invalid_argument("with_weights: expected " + std::to_string(points_.size()) + " weights");
    AtomicMeasure out(interval_);
    out.points_ = points_;
    out.weights_ = std::move(weights);
    return out;
}

AtomicMeasure AtomicMeasure::scaled(double factor) const {
    std::vector<double> w(weights_);
    for (auto& x : w) x *= factor;
    return with_weights(std::move(w));
}

AtomicMeasure new_atomic(const Interval& interval, std::span<const double> points, std::span<const double> weights) {
    return AtomicMeasure(interval, points, weights);
}

AtomicMeasure combine(const AtomicMeasure& mu, const AtomicMeasure& nu, double scale) {
    if (!(mu.interval() == nu.interval()))
        throw std::invalid_argument("measures live on different intervals");
    std::vector<double> p;
    std::vector<double> w;
    p.reserve(mu.size() + nu.size());
    w.reserve(mu.size() + nu.size());
    std::size_t i = 0, j = 0;
    const auto mp = mu.points(), np = nu.points();
    const auto mw = mu.weights(), nw = nu.weights();
    while (i < mp.size() || j < np.size()) {
        if (j == np.size() || (i < mp.size() && mp[i] < np[j])) {
            p.push_back(mp[i]);
            w.push_back(mw[i]);
            ++i;
        } else if (i == mp.size() || np[j] < mp[i]) {
            p.push_back(np[j]);
            w.push_back(scale * nw[j]);
            ++j;
        } else {
            p.push_back(mp[i]);
            w.push_back(mw[i] + scale * nw[j]);
            ++i;
            ++j;
        }
    }
    return AtomicMeasure(mu.interval(), p, w);
}

AtomicMeasure operator+(const AtomicMeasure& mu, const AtomicMeasure& nu) { return combine(mu, nu, 1.0); }
AtomicMeasure operator-(const AtomicMeasure& mu, const AtomicMeasure& nu) { return combine(mu, nu, -1.0); }

double total_mass(const AtomicMeasure& mu) {
    double s = 0.0;
    for (double w : mu.weights()) s += w;
    return s;
}

bool is_probability(const AtomicMeasure& mu, double tol) {
    for (double w : mu.weights())
        if (w < -tol) return false;
    return std::abs(total_mass(mu) - 1.0) <= tol;
}

double hstar_norm_squared(const AtomicMeasure& mu) {
    const auto p = mu.points();
    const auto w = mu.weights();
    const double a = mu.interval().a();
    const double b = mu.interval().b();
    const double mass = total_mass(mu);

    // mu[-a, r) on [-a, 0): constant between atoms, equal to the mass at or
    // left of the segment start.
    double left = 0.0;
    {
        double cum = 0.0;
        double prev = -a;
        for (std::size_t i = 0; i < p.size() && p[i] < 0.0; ++i) {
            left += cum * cum * (p[i] - prev);
            cum += w[i];
            prev = p[i];
        }
        left += cum * cum * (0.0 - prev);
    }
    // mu(r, b] on (0, b], walked from the right.
    double right = 0.0;
    {
        double cum = 0.0;
        double prev = b;
        for (std::size_t i = p.size(); i-- > 0 && p[i] > 0.0;) {
            right += cum * cum * (prev - p[i]);
            cum += w[i];
            prev = p[i];
        }
        right += cum * cum * prev;
    }
    return mass * mass + left + right;
}

double hstar_norm(const AtomicMeasure& mu) { return std::sqrt(hstar_norm_squared(mu)); }

double hstar_distance(const AtomicMeasure& mu, const AtomicMeasure& nu) { return hstar_norm(mu - nu); }

double pair(const AtomicMeasure& mu, const PiecewiseLinearFn& phi) {
    double s = 0.0;
    const auto p = mu.points();
    const auto w = mu.weights();
    for (std::size_t i = 0; i < p.size(); ++i) s += w[i] * phi(p[i]);
    return s;
}

PiecewiseLinearFn riesz_function(const AtomicMeasure& mu) {
    const auto p = mu.points();
    const auto w = mu.weights();
    const Interval& I = mu.interval();

    std::vector<double> knots(p.begin(), p.end());
    knots.push_back(I.lower());
    knots.push_back(0.0);
    knots.push_back(I.upper());
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    // at_or_below[j] = mu[-a, knots[j]]
    std::vector<double> at_or_below(knots.size());
    {
        double cum = 0.0;
        std::size_t i = 0;
        for (std::size_t j = 0; j < knots.size(); ++j) {
            while (i < p.size() && p[i] <= knots[j]) cum += w[i++];
            at_or_below[j] = cum;
        }
    }
    const double mass = total_mass(mu);
    const auto zero = static_cast<std::size_t>(std::find(knots.begin(), knots.end(), 0.0) - knots.begin());

    std::vector<double> values(knots.size());
    values[zero] = mass;
    // r > 0: phi' = mu(r, b] = mass - mu[-a, knot_j] on (knot_j, knot_{j+1}).
    for (std::size_t j = zero; j + 1 < knots.size(); ++j) {
        const double tail = mass - at_or_below[j];
        values[j + 1] = values[j] + tail * (knots[j + 1] - knots[j]);
    }
    // r < 0: phi' = -mu[-a, r) = -mu[-a, knot_{j-1}] on (knot_{j-1}, knot_j).
    for (std::size_t j = zero; j > 0; --j) {
        const double head = at_or_below[j - 1];
        values[j - 1] = values[j] + head * (knots[j] - knots[j - 1]);
    }
    return PiecewiseLinearFn(std::move(knots), std::move(values));
}

}  // namespace spectral
