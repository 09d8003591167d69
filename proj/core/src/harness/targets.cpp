#include "spectral/harness/targets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace spectral::harness {

std::string_view to_string(TargetKind kind) noexcept {
    switch (kind) {
        case TargetKind::uniform: return "uniform";
        case TargetKind::truncated_exponential: return "truncated-exponential";
        case TargetKind::two_point: return "two-point";
    }
    return "uniform";
}

TargetKind parse_target_kind(std::string_view name) {
    if (name == "uniform") return TargetKind::uniform;
    if (name == "truncated-exponential") return TargetKind::truncated_exponential;
    if (name == "two-point") return TargetKind::two_point;
    throw std::invalid_argument("unknown target distribution '" + std::string(name) +
                                "' (expected uniform, truncated-exponential or two-point)");
}

Target Target::uniform(Interval interval) { return Target(TargetKind::uniform, interval); }

Target Target::truncated_exponential(Interval interval, double rate) {
    if (!std::isfinite(rate)) throw std::invalid_argument("truncated-exponential: rate must be finite");
    Target t(TargetKind::truncated_exponential, interval);
    t.rate_ = rate;
    return t;
}

Target Target::two_point(Interval interval) {
    const double q = interval.length() / 4.0;
    return two_point(interval, {interval.lower() + q, interval.lower() + 3.0 * q}, {0.5, 0.5});
}

Target Target::two_point(Interval interval, std::vector<double> points, std::vector<double> weights) {
    // Validates support and weights.
    const AtomicMeasure mu(interval, points, weights);
    if (!is_probability(mu, 1e-12)) throw std::invalid_argument("two-point target: weights must form a probability");
    for (double p : mu.points())
        if (p == interval.lower() || p == interval.upper())
            throw std::invalid_argument("two-point target: no mass allowed at the interval ends");
    Target t(TargetKind::two_point, interval);
    t.points_.assign(mu.points().begin(), mu.points().end());
    t.weights_.assign(mu.weights().begin(), mu.weights().end());
    return t;
}

double Target::cdf_below(double r) const {
    const double lo = interval_.lower();
    if (r <= lo) return 0.0;
    if (r >= interval_.upper() && !is_atomic()) return 1.0;
    if (is_atomic()) {
        double s = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i] < r) s += weights_[i];
        return s;
    }
    if (rate_ == 0.0) return (r - lo) / interval_.length();
    return std::expm1(-rate_ * (r - lo)) / std::expm1(-rate_ * interval_.length());
}

AtomicMeasure Target::atoms() const {
    if (!is_atomic()) throw std::logic_error("Target::atoms: target is not atomic");
    return AtomicMeasure(interval_, points_, weights_);
}

Target Target::flowed(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("Target::flowed: t must be >= 0");
    if (is_atomic()) {
        std::vector<double> w(weights_);
        double G = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] *= std::exp(-points_[i] * t);
            G += w[i];
        }
        for (auto& x : w) x /= G;
        Target out(TargetKind::two_point, interval_);
        out.points_ = points_;
        out.weights_ = std::move(w);
        return out;
    }
    return truncated_exponential(interval_, rate_ + t);
}

AtomicMeasure discretize_target(const Target& target, int n) {
    if (n < 1) throw std::invalid_argument("discretize_target: n must be >= 1");
    const Interval& I = target.interval();
    if (target.is_atomic() && static_cast<std::size_t>(n) >= target.atoms().size()) return target.atoms();

    const double h = I.length() / n;
    std::vector<double> points(static_cast<std::size_t>(n));
    std::vector<double> weights(static_cast<std::size_t>(n));
    double prev = 0.0;
    double assigned = 0.0;
    for (int c = 0; c < n; ++c) {
        const double lo = I.lower() + c * h;
        points[c] = lo + 0.5 * h;
        if (c + 1 == n) {
            weights[c] = 1.0 - assigned;
        } else {
            // Mass of [lo, hi); an atom on a cell boundary goes to the right cell.
            const double next = target.cdf_below(I.lower() + (c + 1) * h);
            weights[c] = next - prev;
            prev = next;
            assigned += weights[c];
        }
    }
    return AtomicMeasure(I, points, weights);
}

namespace {

constexpr std::array<double, 4> kGaussNodes{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                            0.9602898564975363};
constexpr std::array<double, 4> kGaussWeights{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                              0.1012285362903763};

// 8-point Gauss-Legendre on [lo, hi].
template <class F>
double gauss8(F&& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i)
        s += kGaussWeights[i] * (f(mid - half * kGaussNodes[i]) + f(mid + half * kGaussNodes[i]));
    return s * half;
}

// Integrates f over [lo, hi] split at every breakpoint, with pieces no longer
// than max_piece. f must be smooth between breakpoints.
template <class F>
double integrate_piecewise(F&& f, double lo, double hi, std::vector<double> breaks, double max_piece) {
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const double s = std::max(breaks[j], lo);
        const double e = std::min(breaks[j + 1], hi);
        if (!(e > s)) continue;
        const int pieces = std::max(1, static_cast<int>(std::ceil((e - s) / max_piece)));
        const double w = (e - s) / pieces;
        for (int k = 0; k < pieces; ++k) total += gauss8(f, s + k * w, k + 1 == pieces ? e : s + (k + 1) * w);
    }
    return total;
}

}  // namespace

double hstar_distance(const AtomicMeasure& mu, const Target& nu) {
    if (!(mu.interval() == nu.interval())) throw std::invalid_argument("hstar_distance: interval mismatch");
    if (nu.is_atomic()) return hstar_distance(mu, nu.atoms());

    const auto p = mu.points();
    const auto w = mu.weights();
    const double a = mu.interval().a();
    const double b = mu.interval().b();
    const double mass = total_mass(mu);
    const double piece = mu.interval().length() / 64.0;
    std::vector<double> breaks(p.begin(), p.end());

    // mu[-a, r) as a step function; evaluated at interior points of segments only.
    auto mu_below = [&](double r) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size() && p[i] < r; ++i) s += w[i];
        return s;
    };
    auto left = [&](double r) {
        const double d = mu_below(r) - nu.cdf_below(r);
        return d * d;
    };
    auto right = [&](double r) {
        // mu(r, b] - nu(r, b]
        double above = 0.0;
        for (std::size_t i = p.size(); i-- > 0 && p[i] > r;) above += w[i];
        const double d = above - (1.0 - nu.cdf_below(r));
        return d * d;
    };
    const double dm = mass - 1.0;
    double total = dm * dm;
    if (a > 0.0) total += integrate_piecewise(left, -a, 0.0, breaks, piece);
    if (b > 0.0) total += integrate_piecewise(right, 0.0, b, breaks, piece);
    return std::sqrt(total);
}

double pair(const Target& nu, const PiecewiseLinearFn& phi) {
    if (nu.is_atomic()) return spectral::pair(nu.atoms(), phi);
    const Interval& I = nu.interval();
    const double L = I.length();
    const double rate = nu.rate();
    auto density = [&](double r) {
        if (rate == 0.0) return 1.0 / L;
        return -rate * std::exp(-rate * (r - I.lower())) / std::expm1(-rate * L);
    };
    std::vector<double> breaks(phi.knots().begin(), phi.knots().end());
    return integrate_piecewise([&](double r) { return phi(r) * density(r); }, I.lower(), I.upper(), breaks,
                               L / 64.0);
}

}  // namespace spectral::harness
