#include "spectral/volatility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spectral/random.hpp"

namespace spectral {

SigmaMatrix::SigmaMatrix(Interval interval, std::vector<double> support, std::size_t factors)
    : interval_(interval), support_(std::move(support)), factors_(factors), s_(support_.size() * factors, 0.0) {}

SigmaMatrix::SigmaMatrix(Interval interval, std::vector<double> support, std::size_t factors,
                         std::vector<double> entries)
    : interval_(interval), support_(std::move(support)), factors_(factors), s_(std::move(entries)) {
    if (s_.size() != support_.size() * factors_)
        throw std::invalid_argument("sigma matrix: expected " + std::to_string(support_.size() * factors_) +
                                    " entries");
}

AtomicMeasure SigmaMatrix::column(std::size_t k) const {
    std::vector<double> w(support_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (*this)(i, k);
    return AtomicMeasure(interval_, support_, w);
}

double hs_norm(const SigmaMatrix& sigma) {
    double s = 0.0;
    for (std::size_t k = 0; k < sigma.factors(); ++k) s += hstar_norm_squared(sigma.column(k));
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------

VolatilityField VolatilityField::centered(Interval interval, std::vector<PiecewiseLinearFn> loadings,
                                          std::vector<double> scales) {
    if (loadings.size() != scales.size())
        throw std::invalid_argument("volatility field: " + std::to_string(loadings.size()) + " loadings but " +
                                    std::to_string(scales.size()) + " scales");
    for (std::size_t k = 0; k < scales.size(); ++k) {
        if (!std::isfinite(scales[k]) || scales[k] < 0.0)
            throw std::invalid_argument("volatility field: scale beta_" + std::to_string(k + 1) +
                                        " must be finite and >= 0");
        for (double r : loadings[k].knots())
            if (!interval.contains(r))
                throw std::invalid_argument("volatility field: loading h_" + std::to_string(k + 1) +
                                            " has a knot outside the interval");
    }
    VolatilityField f(interval);
    f.factors_ = loadings.size();
    f.bound_ = 0.0;
    for (std::size_t k = 0; k < scales.size(); ++k) f.bound_ += 2.0 * scales[k] * loadings[k].sup_norm();
    f.h_ = std::move(loadings);
    f.beta_ = std::move(scales);
    return f;
}

VolatilityField VolatilityField::zero(Interval interval) { return VolatilityField(interval); }

VolatilityField VolatilityField::custom(Interval interval, std::size_t factors, LoadingFn loading, double bound) {
    if (!loading) throw std::invalid_argument("volatility field: empty loading function");
    VolatilityField f(interval);
    f.factors_ = factors;
    f.custom_ = std::move(loading);
    f.bound_ = bound;
    return f;
}

bool VolatilityField::is_zero() const noexcept {
    if (custom_) return factors_ == 0;
    return std::all_of(beta_.begin(), beta_.end(), [](double b) { return b == 0.0; });
}

void VolatilityField::loading(const AtomicMeasure& mu, double r, std::span<double> out) const {
    if (custom_) {
        custom_(mu, r, out);
        return;
    }
    for (std::size_t k = 0; k < factors_; ++k) out[k] = beta_[k] * (h_[k](r) - pair(mu, h_[k]));
}

VolatilityField VolatilityField::rescaled(double factor) const {
    if (custom_) throw std::invalid_argument("rescaled: only defined for the built-in family");
    std::vector<double> beta(beta_);
    for (auto& b : beta) b *= factor;
    return centered(interval_, h_, std::move(beta));
}

VolatilityField make_centered_field(const Interval& interval, std::vector<PiecewiseLinearFn> h_list,
                                    std::vector<double> beta) {
    return VolatilityField::centered(interval, std::move(h_list), std::move(beta));
}

// ---------------------------------------------------------------------------

FieldOnSupport::FieldOnSupport(const VolatilityField& field, std::span<const double> support)
    : field_(&field), support_(support.begin(), support.end()), n_(support.size()), d_(field.factors()) {
    if (field.is_builtin()) {
        table_.resize(n_ * d_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < d_; ++k) table_[i * d_ + k] = field.beta_[k] * field.h_[k](support_[i]);
        scratch_.resize(d_);
    }
}

void FieldOnSupport::loadings(std::span<const double> x, std::span<double> out) const {
    if (field_->is_builtin()) {
        // beta_k <mu, h_k> = sum_j x_j beta_k h_k(r_j)
        for (std::size_t k = 0; k < d_; ++k) scratch_[k] = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            if (x[j] == 0.0) continue;
            for (std::size_t k = 0; k < d_; ++k) scratch_[k] += x[j] * table_[j * d_ + k];
        }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < d_; ++k) out[i * d_ + k] = table_[i * d_ + k] - scratch_[k];
        return;
    }
    const AtomicMeasure mu(field_->interval(), support_, x);
    for (std::size_t i = 0; i < n_; ++i) field_->loading(mu, support_[i], out.subspan(i * d_, d_));
}

// ---------------------------------------------------------------------------

namespace {

void require_probability(const VolatilityField& field, const AtomicMeasure& mu) {
    if (!(mu.interval() == field.interval()))
        throw std::domain_error("sigma: measure and field live on different intervals");
    if (!is_probability(mu, 1e-9)) throw std::domain_error("sigma: measure is not a probability measure");
}

}  // namespace

SigmaMatrix sigma_atoms(const VolatilityField& field, const AtomicMeasure& mu) {
    require_probability(field, mu);
    const std::size_t n = mu.size();
    const std::size_t d = field.factors();
    const auto w = mu.weights();
    SigmaMatrix s(mu.interval(), std::vector<double>(mu.points().begin(), mu.points().end()), d);
    if (d == 0) return s;

    if (field.is_builtin()) {
        const auto h = field.loading_functions();
        const auto beta = field.scales();
        for (std::size_t k = 0; k < d; ++k) {
            const double mean = pair(mu, h[k]);
            for (std::size_t i = 0; i < n; ++i) s(i, k) = beta[k] * (h[k](mu.points()[i]) - mean) * w[i];
        }
        return s;
    }
    std::vector<double> g(d);
    for (std::size_t i = 0; i < n; ++i) {
        field.loading(mu, mu.points()[i], g);
        for (std::size_t k = 0; k < d; ++k) s(i, k) = g[k] * w[i];
    }
    return s;
}

double hs_norm(const VolatilityField& field, const AtomicMeasure& mu) { return hs_norm(sigma_atoms(field, mu)); }

double hs_distance(const VolatilityField& field, const AtomicMeasure& mu, const AtomicMeasure& nu) {
    const SigmaMatrix sm = sigma_atoms(field, mu);
    const SigmaMatrix sn = sigma_atoms(field, nu);
    double total = 0.0;
    for (std::size_t k = 0; k < field.factors(); ++k) {
        const double d = hstar_distance(sm.column(k), sn.column(k));
        total += d * d;
    }
    return std::sqrt(total);
}

double estimate_lipschitz(const VolatilityField& field, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("estimate_lipschitz: trials must be >= 1");
    const Interval& I = field.interval();
    SplitMix64 rng(seed);
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 8));
        std::vector<double> points(n);
        for (auto& p : points) p = rng.uniform(I.lower(), I.upper());
        std::vector<double> x(n), y(n);
        double sx = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.exponential();
            y[i] = rng.exponential();
            sx += x[i];
            sy += y[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            x[i] /= sx;
            y[i] /= sy;
        }
        const AtomicMeasure mu(I, points, x);
        const AtomicMeasure nu(I, points, y);
        const double dist = hstar_distance(mu, nu);
        if (!(dist > 0.0)) continue;
        best = std::max(best, hs_distance(field, mu, nu) / dist);
    }
    return best;
}

}  // namespace spectral
