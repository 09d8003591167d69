#pragma once

// Atomic signed measures on a bounded interval I = [-a, b] and the dual
// Sobolev norm they carry.
//
// The Hilbert space H is the absolutely continuous functions on I with
//     |phi|_H^2 = phi(0)^2 + int_I phi'(r)^2 dr,
// and for a finite signed measure mu the dual norm has the closed form
//     |mu|_{H*}^2 = mu(I)^2 + int_{-a}^0 mu[-a,r)^2 dr + int_0^b mu(r,b]^2 dr.
// Both tail distribution functions are piecewise constant between atoms, so
// the norm is evaluated exactly, segment by segment.

#include <cstddef>
#include <span>
#include <vector>

namespace spectral {

/// The closed interval [-a, b]; always contains the origin.
class Interval {
public:
    /// Throws std::invalid_argument unless a >= 0, b >= 0 and a + b > 0.
    Interval(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double lower() const noexcept { return -a_; }
    double upper() const noexcept { return b_; }
    double length() const noexcept { return a_ + b_; }
    bool contains(double r) const noexcept { return r >= -a_ && r <= b_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double a_;
    double b_;
};

/// Continuous piecewise-linear function given by its values at sorted knots.
/// Extended as a constant to the left of the first knot and to the right of
/// the last one, so it stays absolutely continuous on any interval.
class PiecewiseLinearFn {
public:
    /// Knots must be strictly increasing, finite, and non-empty.
    PiecewiseLinearFn(std::vector<double> knots, std::vector<double> values);

    static PiecewiseLinearFn constant(double c);
    /// r -> r on the interval.
    static PiecewiseLinearFn identity(const Interval& interval);
    /// Triangle with apex value `height` at `peak`, zero at `left` and `right`.
    /// Either side may be degenerate (left == peak or right == peak), giving a
    /// one-sided triangle.
    static PiecewiseLinearFn hat(double left, double peak, double right, double height = 1.0);

    double operator()(double r) const;

    std::span<const double> knots() const noexcept { return knots_; }
    std::span<const double> values() const noexcept { return values_; }

    /// phi(0)^2 + int phi'(r)^2 dr, exact.
    double h_norm_squared() const;
    double h_norm() const;
    /// max |phi| (attained at a knot).
    double sup_norm() const;

    friend bool operator==(const PiecewiseLinearFn&, const PiecewiseLinearFn&) = default;

private:
    std::vector<double> knots_;
    std::vector<double> values_;
};

struct Atom {
    double point;
    double weight;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite signed combination sum_i w_i delta_{r_i} on an Interval.
///
/// Stored canonically: support points strictly increasing, duplicates merged
/// by summing their weights. Zero weights are kept, so a support grid stays
/// aligned when weights are transformed.
class AtomicMeasure {
public:
    /// Throws std::invalid_argument on length mismatch or non-finite input and
    /// std::domain_error when a point lies outside the interval.
    AtomicMeasure(Interval interval, std::span<const double> points, std::span<const double> weights);

    static AtomicMeasure zero(Interval interval);
    static AtomicMeasure dirac(Interval interval, double r);

    const Interval& interval() const noexcept { return interval_; }
    std::span<const double> points() const noexcept { return points_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return points_.size(); }
    Atom atom(std::size_t i) const { return {points_[i], weights_[i]}; }

    /// Same support, weights replaced. Length must match.
    AtomicMeasure with_weights(std::vector<double> weights) const;
    AtomicMeasure scaled(double factor) const;

    friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

private:
    AtomicMeasure(Interval interval) : interval_(interval) {}

    Interval interval_;
    std::vector<double> points_;
    std::vector<double> weights_;
};

AtomicMeasure new_atomic(const Interval& interval, std::span<const double> points,
                         std::span<const double> weights);

/// mu + scale * nu on the union of both supports. Intervals must agree.
AtomicMeasure combine(const AtomicMeasure& mu, const AtomicMeasure& nu, double scale);
AtomicMeasure operator+(const AtomicMeasure& mu, const AtomicMeasure& nu);
AtomicMeasure operator-(const AtomicMeasure& mu, const AtomicMeasure& nu);

double total_mass(const AtomicMeasure& mu);

/// All weights >= -tol and |mass - 1| <= tol.
bool is_probability(const AtomicMeasure& mu, double tol);

double hstar_norm_squared(const AtomicMeasure& mu);
double hstar_norm(const AtomicMeasure& mu);

/// Throws std::invalid_argument if the intervals differ.
double hstar_distance(const AtomicMeasure& mu, const AtomicMeasure& nu);

/// <mu, phi> = sum_i w_i phi(r_i).
double pair(const AtomicMeasure& mu, const PiecewiseLinearFn& phi);

/// Riesz representative of mu in H:
///   phi(r) = mu(I) + int_0^r mu(s,b] ds      for r > 0,
///   phi(r) = mu(I) + int_r^0 mu[-a,s) ds     for r <= 0.
/// Knots are -a, every atom, 0 and b.
PiecewiseLinearFn riesz_function(const AtomicMeasure& mu);

}  // namespace spectral
