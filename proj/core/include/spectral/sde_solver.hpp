#pragma once

// Time-discrete simulation of the atomic equation on the simplex
//
//     dX^i = X^i (R - r_i) dt + sum_k s_{i,k}(X) dW^k,   R = sum_j r_j X^j,
//
// with s_{i,k}(x) = g^k(mu_x, r_i) x_i from a VolatilityField.
//
// Two schemes:
//   projected-euler  x + b(x) dt + s(x) dW, then Euclidean projection onto
//                    the simplex of the atoms currently carrying mass;
//   exponential      x_i exp(c_i dt + tau_i . dW - |tau_i|^2 dt / 2) with
//                    c_i = b_i / x_i, tau_i = s_i / x_i, then renormalized.
// Atoms with zero weight are frozen at zero by both schemes.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "spectral/random.hpp"
#include "spectral/simplex.hpp"
#include "spectral/volatility.hpp"

namespace spectral {

enum class Scheme { projected_euler, exponential };

std::string_view to_string(Scheme s) noexcept;
/// Accepts "projected-euler" and "exponential".
Scheme parse_scheme(std::string_view name);

struct SimulationConfig {
    std::vector<double> support;
    VolatilityField field;
    double dt = 1e-3;
    double horizon = 1.0;
    Scheme scheme = Scheme::projected_euler;
    std::uint64_t seed = 0;
    std::size_t n_paths = 1;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// 0 = t_0 < ... < t_m = horizon with spacing dt; the last step is shortened
/// when the horizon is not a multiple of dt.
std::vector<double> time_grid(double dt, double horizon);

class SimulationPath {
public:
    SimulationPath(std::vector<double> support, std::vector<double> times);

    std::span<const double> support() const noexcept { return support_; }
    std::span<const double> times() const noexcept { return times_; }
    std::span<const double> rates() const noexcept { return rates_; }
    std::size_t atoms() const noexcept { return support_.size(); }
    std::size_t steps() const noexcept { return times_.size() - 1; }
    double horizon() const noexcept { return times_.back(); }

    std::span<const double> state(std::size_t j) const { return {states_.data() + j * atoms(), atoms()}; }
    SimplexPoint point(std::size_t j) const;

    /// Stores x as state j and sets rates[j] = sum_i r_i x_i.
    void record(std::size_t j, std::span<const double> x);

private:
    std::vector<double> support_;
    std::vector<double> times_;
    std::vector<double> states_;
    std::vector<double> rates_;
};

/// Reusable per-path stepping state for a fixed support and field.
class Stepper {
public:
    Stepper(const VolatilityField& field, std::span<const double> support);

    void euler(std::span<double> x, std::span<const double> dW, double dt);
    void exponential(std::span<double> x, std::span<const double> dW, double dt);
    void step(Scheme scheme, std::span<double> x, std::span<const double> dW, double dt) {
        scheme == Scheme::exponential ? exponential(x, dW, dt) : euler(x, dW, dt);
    }

    /// Pre-projection Euler update x + b(x) dt + s(x) dW.
    std::vector<double> euler_update(std::span<const double> x, std::span<const double> dW, double dt);

private:
    void evaluate(std::span<const double> x);

    FieldOnSupport field_;
    std::vector<double> support_;
    std::vector<double> g_;
    std::vector<double> active_;
    std::vector<std::size_t> index_;
    std::vector<double> scratch_;
};

SimplexPoint euler_step(const SimplexPoint& x, std::span<const double> dW, double dt, std::span<const double> support,
                        const VolatilityField& field);
SimplexPoint exp_step(const SimplexPoint& x, std::span<const double> dW, double dt, std::span<const double> support,
                      const VolatilityField& field);

/// Brownian increments for one step: sqrt(dt) * N(0,1) per factor, drawn
/// from the path stream at counter (factor << 40 | step). Independent of the
/// support, so paths on different grids with the same (seed, path) are coupled.
void brownian_increments(std::uint64_t stream, std::size_t step, double dt, std::span<double> out);

/// Path `path_index` of the ensemble described by config.
SimulationPath simulate_path(const SimulationConfig& config, const SimplexPoint& x0, std::size_t path_index = 0);

struct Ensemble {
    SimulationConfig config;
    std::size_t first_path = 0;
    std::vector<SimulationPath> paths;
};

/// Paths first_path .. first_path + config.n_paths - 1.
Ensemble simulate_ensemble(const SimulationConfig& config, const SimplexPoint& x0, std::size_t first_path = 0);

/// Applies fn to every path of the ensemble without keeping the paths and
/// returns the results in path order. Paths may run on several threads; the
/// result does not depend on `threads`. threads == 0 picks the hardware count.
template <class Fn>
auto map_ensemble(const SimulationConfig& config, const SimplexPoint& x0, Fn fn, unsigned threads = 0)
    -> std::vector<std::invoke_result_t<Fn&, const SimulationPath&>> {
    using Result = std::invoke_result_t<Fn&, const SimulationPath&>;
    config.validate();
    const std::size_t n = config.n_paths;
    std::vector<Result> out(n);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t p = 0; p < n; ++p) out[p] = fn(simulate_path(config, x0, p));
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            Fn local = fn;
            for (std::size_t p = t; p < n; p += threads) out[p] = local(simulate_path(config, x0, p));
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace spectral
