#pragma once

// Initial distributions that are approximated by atomic measures, and their
// noiseless evolution.
//
// Continuous targets have density proportional to exp(-rate * r) on I
// (rate 0 is the uniform law); the deterministic flow maps rate -> rate + t,
// so these targets also serve as the continuum limit of the atomic flow.

#include <string>
#include <string_view>
#include <vector>

#include "spectral/measure_space.hpp"

namespace spectral::harness {

enum class TargetKind { uniform, truncated_exponential, two_point };

std::string_view to_string(TargetKind kind) noexcept;
/// "uniform", "truncated-exponential", "two-point"; throws std::invalid_argument otherwise.
TargetKind parse_target_kind(std::string_view name);

class Target {
public:
    static Target uniform(Interval interval);
    static Target truncated_exponential(Interval interval, double rate);
    /// Atoms at the quarter points of I with mass 1/2 each.
    static Target two_point(Interval interval);
    static Target two_point(Interval interval, std::vector<double> points, std::vector<double> weights);

    TargetKind kind() const noexcept { return kind_; }
    const Interval& interval() const noexcept { return interval_; }
    bool is_atomic() const noexcept { return kind_ == TargetKind::two_point; }
    double rate() const noexcept { return rate_; }

    /// nu[-a, r) (equal to nu[-a, r] for continuous targets).
    double cdf_below(double r) const;
    /// The atomic law; only for atomic targets.
    AtomicMeasure atoms() const;

    /// Law at time t of the noiseless flow started from this target.
    Target flowed(double t) const;

private:
    Target(TargetKind kind, Interval interval) : kind_(kind), interval_(interval) {}

    TargetKind kind_;
    Interval interval_;
    double rate_ = 0.0;
    std::vector<double> points_;
    std::vector<double> weights_;
};

/// Cell-midpoint discretization with n equal cells: atom at each cell midpoint
/// carrying the target mass of that cell. Atomic targets are reproduced
/// exactly once n is at least their atom count.
/// Throws std::invalid_argument for n < 1.
AtomicMeasure discretize_target(const Target& target, int n);

/// |mu - nu|_{H*}, exact for uniform and atomic targets and accurate to
/// rounding for the exponential family (Gauss-Legendre on sub-cells).
double hstar_distance(const AtomicMeasure& mu, const Target& nu);

/// int phi dnu.
double pair(const Target& nu, const PiecewiseLinearFn& phi);

}  // namespace spectral::harness
