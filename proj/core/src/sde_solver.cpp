#include "spectral/sde_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace spectral {

std::string_view to_string(Scheme s) noexcept {
    return s == Scheme::exponential ? "exponential" : "projected-euler";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "projected-euler") return Scheme::projected_euler;
    if (name == "exponential") return Scheme::exponential;
    throw std::invalid_argument("unknown scheme '" + std::string(name) +
                                "' (expected projected-euler or exponential)");
}

void SimulationConfig::validate() const {
    if (support.empty()) throw std::invalid_argument("support: at least one atom required");
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!field.interval().contains(support[i]))
            throw std::invalid_argument("support: atom " + std::to_string(support[i]) + " outside the interval");
        if (i > 0 && !(support[i] > support[i - 1]))
            throw std::invalid_argument("support: atoms must be distinct and ascending");
    }
    if (!(std::isfinite(dt) && dt > 0.0)) throw std::invalid_argument("dt: must be positive");
    if (!(std::isfinite(horizon) && horizon > 0.0)) throw std::invalid_argument("T: must be positive");
    if (dt > horizon) throw std::invalid_argument("dt: must not exceed T");
    if (n_paths == 0) throw std::invalid_argument("n_paths: must be >= 1");
}

std::vector<double> time_grid(double dt, double horizon) {
    if (!(dt > 0.0) || !(horizon > 0.0)) throw std::invalid_argument("time_grid: dt and horizon must be positive");
    const double ratio = horizon / dt;
    const double k = std::round(ratio);
    std::size_t m;
    if (k >= 1.0 && std::abs(k * dt - horizon) <= 1e-9 * dt) m = static_cast<std::size_t>(k);
    else m = static_cast<std::size_t>(std::floor(ratio)) + 1;
    std::vector<double> t(m + 1);
    for (std::size_t j = 0; j < m; ++j) t[j] = static_cast<double>(j) * dt;
    t[m] = horizon;
    return t;
}

// ---------------------------------------------------------------------------

SimulationPath::SimulationPath(std::vector<double> support, std::vector<double> times)
    : support_(std::move(support)),
      times_(std::move(times)),
      states_(support_.size() * times_.size(), 0.0),
      rates_(times_.size(), 0.0) {}

SimplexPoint SimulationPath::point(std::size_t j) const {
    const auto s = state(j);
    return SimplexPoint::from_weights(std::vector<double>(s.begin(), s.end()), 1e-9);
}

void SimulationPath::record(std::size_t j, std::span<const double> x) {
    double R = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        states_[j * atoms() + i] = x[i];
        R += support_[i] * x[i];
    }
    rates_[j] = R;
}

// ---------------------------------------------------------------------------

Stepper::Stepper(const VolatilityField& field, std::span<const double> support)
    : field_(field, support), support_(support.begin(), support.end()), g_(support.size() * field.factors()) {
    active_.reserve(support.size());
    index_.reserve(support.size());
}

void Stepper::evaluate(std::span<const double> x) {
    if (field_.factors() > 0) field_.loadings(x, g_);
}

std::vector<double> Stepper::euler_update(std::span<const double> x, std::span<const double> dW, double dt) {
    evaluate(x);
    const std::size_t n = support_.size();
    const std::size_t d = field_.factors();
    double R = 0.0;
    for (std::size_t i = 0; i < n; ++i) R += support_[i] * x[i];
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double noise = 0.0;
        for (std::size_t k = 0; k < d; ++k) noise += g_[i * d + k] * dW[k];
        y[i] = x[i] + x[i] * (R - support_[i]) * dt + x[i] * noise;
    }
    return y;
}

void Stepper::euler(std::span<double> x, std::span<const double> dW, double dt) {
    evaluate(x);
    const std::size_t n = support_.size();
    const std::size_t d = field_.factors();
    double R = 0.0;
    for (std::size_t i = 0; i < n; ++i) R += support_[i] * x[i];
    active_.clear();
    index_.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0.0) continue;
        double noise = 0.0;
        for (std::size_t k = 0; k < d; ++k) noise += g_[i * d + k] * dW[k];
        active_.push_back(x[i] + x[i] * (R - support_[i]) * dt + x[i] * noise);
        index_.push_back(i);
    }
    project_in_place(active_, scratch_);
    for (std::size_t a = 0; a < index_.size(); ++a) x[index_[a]] = active_[a];
}

void Stepper::exponential(std::span<double> x, std::span<const double> dW, double dt) {
    evaluate(x);
    const std::size_t n = support_.size();
    const std::size_t d = field_.factors();
    double R = 0.0;
    for (std::size_t i = 0; i < n; ++i) R += support_[i] * x[i];
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0.0) continue;
        double noise = 0.0;
        double quad = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double g = g_[i * d + k];
            noise += g * dW[k];
            quad += g * g;
        }
        x[i] *= std::exp((R - support_[i]) * dt + noise - 0.5 * quad * dt);
        total += x[i];
    }
    for (std::size_t i = 0; i < n; ++i) x[i] /= total;
}

namespace {

void check_dims(const SimplexPoint& x, std::span<const double> dW, std::span<const double> support,
                const VolatilityField& field) {
    if (x.size() != support.size()) throw std::invalid_argument("state and support differ in length");
    if (dW.size() != field.factors()) throw std::invalid_argument("need one Brownian increment per factor");
}

}  // namespace

SimplexPoint euler_step(const SimplexPoint& x, std::span<const double> dW, double dt, std::span<const double> support,
                        const VolatilityField& field) {
    check_dims(x, dW, support, field);
    Stepper stepper(field, support);
    std::vector<double> y = x.vector();
    stepper.euler(y, dW, dt);
    return SimplexPoint::from_weights(std::move(y), 1e-9);
}

SimplexPoint exp_step(const SimplexPoint& x, std::span<const double> dW, double dt, std::span<const double> support,
                      const VolatilityField& field) {
    check_dims(x, dW, support, field);
    Stepper stepper(field, support);
    std::vector<double> y = x.vector();
    stepper.exponential(y, dW, dt);
    return SimplexPoint::from_weights(std::move(y), 1e-9);
}

void brownian_increments(std::uint64_t stream, std::size_t step, double dt, std::span<double> out) {
    const double scale = std::sqrt(dt);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = scale * counter_normal(stream, (static_cast<std::uint64_t>(k) << 40) | step);
}

SimulationPath simulate_path(const SimulationConfig& config, const SimplexPoint& x0, std::size_t path_index) {
    config.validate();
    if (x0.size() != config.support.size())
        throw std::invalid_argument("initial state has " + std::to_string(x0.size()) + " weights for " +
                                    std::to_string(config.support.size()) + " atoms");
    SimulationPath path(config.support, time_grid(config.dt, config.horizon));
    const auto times = path.times();
    const std::uint64_t stream = path_stream(config.seed, path_index);
    const bool noisy = !config.field.is_zero();

    Stepper stepper(config.field, config.support);
    std::vector<double> x = x0.vector();
    std::vector<double> dW(config.field.factors(), 0.0);
    path.record(0, x);
    for (std::size_t j = 0; j + 1 < times.size(); ++j) {
        const double h = times[j + 1] - times[j];
        if (noisy) brownian_increments(stream, j, h, dW);
        stepper.step(config.scheme, x, dW, h);
        path.record(j + 1, x);
    }
    return path;
}

Ensemble simulate_ensemble(const SimulationConfig& config, const SimplexPoint& x0, std::size_t first_path) {
    config.validate();
    Ensemble e{config, first_path, {}};
    e.paths.reserve(config.n_paths);
    for (std::size_t p = 0; p < config.n_paths; ++p) e.paths.push_back(simulate_path(config, x0, first_path + p));
    return e;
}

}  // namespace spectral
