#pragma once

// Run configuration: flat `key = value` text with dotted section keys.
//
//   # two atoms on [0, 1]
//   interval.a = 0
//   interval.b = 1
//   support.points = 0, 1
//   weights.values = 0.5, 0.5
//   field.preset = linear
//   field.beta = 0.5
//   sim.dt = 0.001
//
// Every key is optional; unknown keys and malformed values are rejected with
// a ConfigError naming the key.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spectral/harness/targets.hpp"
#include "spectral/sde_solver.hpp"

namespace spectral::harness {

class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& key, const std::string& what)
        : std::invalid_argument(key + ": " + what), key_(key) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct FactorSpec {
    std::vector<double> knots;
    std::vector<double> values;
    double beta = 0.0;
    friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

enum class FieldPreset { none, zero, linear, two_factor };

struct RunConfig {
    double a = 0.0;
    double b = 1.0;

    // Support: explicit points, or n cell midpoints of I.
    std::vector<double> support_points;
    std::size_t support_n = 0;

    // Initial weights: explicit, or a named target discretized on support.n
    // cells. Neither given means uniform weights on the support.
    std::vector<double> weights;
    std::optional<TargetKind> target;
    double target_rate = 1.0;
    std::vector<double> target_points;
    std::vector<double> target_weights;

    // Volatility: a preset, or explicit factors (field.h<k>.*).
    FieldPreset field_preset = FieldPreset::none;
    double field_beta = 0.5;
    std::vector<FactorSpec> factors;

    double dt = 1e-3;
    double horizon = 1.0;
    std::size_t n_paths = 1000;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::projected_euler;

    std::vector<double> maturities{0.5, 1.0, 2.0};
    std::vector<int> n_list{4, 8, 16, 32};
    std::vector<double> nu_weights;
    double flow_t = 1.0;
    int flow_steps = 10;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// A RunConfig resolved into solver inputs.
struct ResolvedRun {
    Interval interval;
    SimulationConfig sim;
    AtomicMeasure mu0;
    SimplexPoint x0;
};

Interval build_interval(const RunConfig& config);
VolatilityField build_field(const RunConfig& config);
/// The named target, or uniform if none is configured.
Target build_target(const RunConfig& config);
/// Throws ConfigError naming the key that makes the run ill-formed.
ResolvedRun resolve(const RunConfig& config);

}  // namespace spectral::harness
