#pragma once

// Headline experiments: atomic approximation (Cauchy behaviour of solutions
// started from finer and finer discretizations), stability of coupled
// solutions against the Gronwall envelope, and the diagnostics behind the
// `check` command.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectral/harness/config.hpp"
#include "spectral/pricing.hpp"

namespace spectral::harness {

struct BoundCheck {
    std::string description;
    double measured = 0.0;
    double bound = 0.0;  // closed-form or stated threshold the measurement is held to
    bool passed = false;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<BoundCheck> checks;
    std::optional<double> fitted_order;

    bool passed() const;
    std::string to_text() const;
};

/// Least-squares slope of -log(y) against log(x).
double fitted_order(std::span<const double> x, std::span<const double> y);

/// Gronwall envelope 3 d0^2 exp(12 C^2 T + 3 C1^2 T^2).
double stability_envelope(double initial_distance_sq, double lipschitz_sigma, double c1, double horizon);

/// For consecutive n in n_list, simulates coupled paths (same seed and path
/// index, hence shared Brownian increments) started from the n-cell
/// discretization of the configured target, and reports the mean over paths
/// of sup_t |mu^m_t - mu^n_t|^2_{H*}. With a zero field it also reports
/// sup_t |mu^n_t - nu_t|^2 against the continuum flow nu_t of the target and
/// fits its order in n.
ExperimentReport run_convergence_experiment(const RunConfig& config, const std::vector<int>& n_list);

/// Simulates solutions from mu0 and nu0 (same support) with shared
/// increments and compares the mean of sup_t |mu_t - nu_t|^2 with the
/// Gronwall envelope. Throws std::invalid_argument on a support mismatch.
ExperimentReport run_stability_experiment(const RunConfig& config, const AtomicMeasure& mu0,
                                          const AtomicMeasure& nu0);

/// Martingale residuals at each maturity, the supermartingale drift of R,
/// and the simplex invariants along every path.
ExperimentReport run_check(const RunConfig& config);

/// Results of streaming an ensemble once for the martingale and
/// supermartingale diagnostics.
struct PathDiagnostics {
    std::vector<McEstimate> martingale;       // mean discount - P(0, T), per maturity
    std::vector<McEstimate> supermartingale;  // mean R_T - R_0, per maturity
    double max_mass_error = 0.0;
    double min_weight = 0.0;
    double min_positive_start_weight = 0.0;  // smallest weight of atoms that started positive
};

PathDiagnostics diagnose_ensemble(const SimulationConfig& sim, const SimplexPoint& x0, const AtomicMeasure& mu0,
                                  std::span<const double> maturities);

}  // namespace spectral::harness
