#pragma once

// Finite-factor volatility fields sigma(mu)(dr) = g(mu, r) mu(dr), g in R^d.
//
// The built-in family uses loadings
//     g^k(mu, r) = beta_k (h_k(r) - <mu, h_k>)
// with bounded piecewise-linear h_k. It is centered on probability measures
// (int g^k(mu, r) mu(dr) = 0), bounded by C_g = sum_k 2 beta_k sup|h_k|, and
// Lipschitz on the simplex.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spectral/measure_space.hpp"

namespace spectral {

/// Per-atom diffusion coefficients s(i, k) = g^k(mu, r_i) w_i.
class SigmaMatrix {
public:
    SigmaMatrix(Interval interval, std::vector<double> support, std::size_t factors);
    SigmaMatrix(Interval interval, std::vector<double> support, std::size_t factors, std::vector<double> entries);

    const Interval& interval() const noexcept { return interval_; }
    std::span<const double> support() const noexcept { return support_; }
    std::size_t atoms() const noexcept { return support_.size(); }
    std::size_t factors() const noexcept { return factors_; }

    double operator()(std::size_t i, std::size_t k) const { return s_[i * factors_ + k]; }
    double& operator()(std::size_t i, std::size_t k) { return s_[i * factors_ + k]; }
    std::span<const double> row(std::size_t i) const { return {s_.data() + i * factors_, factors_}; }

    /// Factor k as the atomic measure sum_i s(i,k) delta_{r_i}.
    AtomicMeasure column(std::size_t k) const;

private:
    Interval interval_;
    std::vector<double> support_;
    std::size_t factors_;
    std::vector<double> s_;
};

/// Hilbert-Schmidt norm of the map e_k -> column(k): sqrt(sum_k |column_k|^2_{H*}).
double hs_norm(const SigmaMatrix& sigma);

class VolatilityField;

/// A field restricted to a fixed support grid, evaluated on raw weight
/// vectors. This is what the path simulators call each step.
class FieldOnSupport {
public:
    FieldOnSupport(const VolatilityField& field, std::span<const double> support);

    std::size_t atoms() const noexcept { return n_; }
    std::size_t factors() const noexcept { return d_; }

    /// g(i, k) at weights x, written row-major into out (size n*d).
    void loadings(std::span<const double> x, std::span<double> out) const;

private:
    const VolatilityField* field_;
    std::vector<double> support_;
    std::size_t n_;
    std::size_t d_;
    std::vector<double> table_;  // beta_k h_k(r_i), row-major; built-in family only
    mutable std::vector<double> scratch_;
};

class VolatilityField {
public:
    /// Writes g^1..g^d at (mu, r) into out.
    using LoadingFn = std::function<void(const AtomicMeasure& mu, double r, std::span<double> out)>;

    /// Built-in centered family. Throws std::invalid_argument if the lists
    /// differ in length, a scale is negative or non-finite, or a knot falls
    /// outside the interval.
    static VolatilityField centered(Interval interval, std::vector<PiecewiseLinearFn> loadings,
                                    std::vector<double> scales);
    /// No noise: d = 0.
    static VolatilityField zero(Interval interval);
    /// User-supplied loading. Centering and the bound are the caller's
    /// responsibility; `bound` is reported as C_g.
    static VolatilityField custom(Interval interval, std::size_t factors, LoadingFn loading, double bound);

    const Interval& interval() const noexcept { return interval_; }
    std::size_t factors() const noexcept { return factors_; }
    bool is_builtin() const noexcept { return !custom_; }
    /// True when every loading vanishes identically (d = 0 or all beta_k = 0).
    bool is_zero() const noexcept;

    std::span<const PiecewiseLinearFn> loading_functions() const noexcept { return h_; }
    std::span<const double> scales() const noexcept { return beta_; }

    /// C_g with |g(mu, r)| <= C_g.
    double bound_constant() const noexcept { return bound_; }

    void loading(const AtomicMeasure& mu, double r, std::span<double> out) const;

    /// Same field with every scale multiplied by `factor` (built-in only).
    VolatilityField rescaled(double factor) const;

private:
    friend class FieldOnSupport;
    VolatilityField(Interval interval) : interval_(interval) {}

    Interval interval_;
    std::size_t factors_ = 0;
    std::vector<PiecewiseLinearFn> h_;
    std::vector<double> beta_;
    LoadingFn custom_;
    double bound_ = 0.0;
};

VolatilityField make_centered_field(const Interval& interval, std::vector<PiecewiseLinearFn> h_list,
                                    std::vector<double> beta);

/// Throws std::domain_error unless mu is a probability measure (tolerance 1e-9)
/// on the field's interval.
SigmaMatrix sigma_atoms(const VolatilityField& field, const AtomicMeasure& mu);

double hs_norm(const VolatilityField& field, const AtomicMeasure& mu);

/// |sigma(mu) - sigma(nu)|_HS for two probability measures on a common support.
double hs_distance(const VolatilityField& field, const AtomicMeasure& mu, const AtomicMeasure& nu);

/// Largest observed |sigma(mu) - sigma(nu)|_HS / |mu - nu|_{H*} over `trials`
/// random probability pairs on shared random supports. A lower bound on the
/// Lipschitz constant.
double estimate_lipschitz(const VolatilityField& field, int trials, std::uint64_t seed);

}  // namespace spectral
