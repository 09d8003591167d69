#include "spectral/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spectral/harness/csv.hpp"
#include "spectral/operators.hpp"

namespace spectral::harness {

bool ExperimentReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed; });
}

namespace {
std::string interval_text(const Interval& I) {
    return "[" + (I.a() == 0.0 ? std::string("0") : format_double(-I.a())) + ", " + format_double(I.b()) + "]";
}
}  // namespace

std::string ExperimentReport::to_text() const {
    std::ostringstream o;
    o << "experiment: " << name << '\n';
    for (const auto& [k, v] : parameters) o << "  " << k << " = " << v << '\n';
    if (!columns.empty()) {
        o << '\n';
        for (std::size_t c = 0; c < columns.size(); ++c) o << (c ? "\t" : "") << columns[c];
        o << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                o << (c ? "\t" : "") << (std::isnan(row[c]) ? std::string("-") : format_double(row[c]));
            o << '\n';
        }
    }
    if (fitted_order) o << "\nfitted order: " << format_double(*fitted_order) << '\n';
    o << '\n';
    for (const auto& c : checks)
        o << (c.passed ? "PASS  " : "FAIL  ") << c.description << ": measured " << format_double(c.measured)
          << ", bound " << format_double(c.bound) << '\n';
    o << "result: " << (passed() ? "PASS" : "FAIL") << '\n';
    return o.str();
}

double fitted_order(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fitted_order: need >= 2 points");
    double mx = 0.0, my = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += -std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (-std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double stability_envelope(double initial_distance_sq, double lipschitz_sigma, double c1, double horizon) {
    const double C = lipschitz_sigma;
    return 3.0 * initial_distance_sq * std::exp(12.0 * C * C * horizon + 3.0 * c1 * c1 * horizon * horizon);
}

namespace {

constexpr int kLipschitzTrials = 1000;

AtomicMeasure state_measure(const Interval& I, const SimulationPath& path, std::size_t j) {
    return AtomicMeasure(I, path.support(), path.state(j));
}

// Time indices at which continuum distances are evaluated: at most ~200,
// always including the last.
std::vector<std::size_t> sample_indices(std::size_t steps) {
    const std::size_t stride = std::max<std::size_t>(1, steps / 200);
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j <= steps; j += stride) idx.push_back(j);
    if (idx.back() != steps) idx.push_back(steps);
    return idx;
}

std::string describe_field(const VolatilityField& f) {
    if (f.is_zero()) return "zero";
    std::ostringstream o;
    o << f.factors() << " factor(s), C_g = " << format_double(f.bound_constant());
    return o.str();
}

}  // namespace

ExperimentReport run_convergence_experiment(const RunConfig& config, const std::vector<int>& n_list) {
    if (n_list.size() < 2) throw std::invalid_argument("convergence experiment: n_list needs >= 2 entries");
    const Interval I = build_interval(config);
    const VolatilityField field = build_field(config);
    const Target target = build_target(config);
    const bool deterministic = field.is_zero();
    const std::size_t n_paths = deterministic ? 1 : config.n_paths;

    std::vector<AtomicMeasure> initial;
    std::vector<SimulationConfig> sims;
    std::vector<SimplexPoint> starts;
    for (int n : n_list) {
        initial.push_back(discretize_target(target, n));
        const auto& mu = initial.back();
        sims.push_back(SimulationConfig{std::vector<double>(mu.points().begin(), mu.points().end()), field, config.dt,
                                        config.horizon, config.scheme, config.seed, n_paths});
        starts.push_back(SimplexPoint::from_weights(std::vector<double>(mu.weights().begin(), mu.weights().end()),
                                                    1e-9));
    }
    const std::size_t pairs = n_list.size() - 1;
    std::vector<std::vector<double>> sup_sq(pairs, std::vector<double>(n_paths, 0.0));
    std::vector<double> continuum(n_list.size(), 0.0);
    const auto grid = time_grid(config.dt, config.horizon);

    for (std::size_t p = 0; p < n_paths; ++p) {
        std::vector<SimulationPath> paths;
        for (std::size_t k = 0; k < n_list.size(); ++k) paths.push_back(simulate_path(sims[k], starts[k], p));
        for (std::size_t k = 0; k < pairs; ++k) {
            double worst = 0.0;
            for (std::size_t j = 0; j < grid.size(); ++j)
                worst = std::max(worst, hstar_norm_squared(state_measure(I, paths[k], j) -
                                                           state_measure(I, paths[k + 1], j)));
            sup_sq[k][p] = worst;
        }
        if (deterministic) {
            for (std::size_t k = 0; k < n_list.size(); ++k) {
                double worst = 0.0;
                for (std::size_t j : sample_indices(grid.size() - 1)) {
                    const double d = hstar_distance(state_measure(I, paths[k], j), target.flowed(grid[j]));
                    worst = std::max(worst, d * d);
                }
                continuum[k] = worst;
            }
        }
    }

    const double lipschitz = deterministic ? 0.0 : estimate_lipschitz(field, kLipschitzTrials, config.seed);
    const double c1 = drift_constants(I).c1;

    ExperimentReport r;
    r.name = "atomic approximation convergence";
    r.parameters = {{"interval", interval_text(I)},
                    {"target", std::string(to_string(target.kind()))},
                    {"field", describe_field(field)},
                    {"scheme", std::string(to_string(config.scheme))},
                    {"dt", format_double(config.dt)},
                    {"T", format_double(config.horizon)},
                    {"paths", std::to_string(n_paths)},
                    {"seed", std::to_string(config.seed)},
                    {"sigma Lipschitz estimate C", format_double(lipschitz)},
                    {"drift Lipschitz constant C1", format_double(c1)}};
    r.columns = {"n", "next_n", "initial_dist_sq", "mean_sup_dist_sq", "std_error", "envelope"};
    if (deterministic) r.columns.push_back("continuum_sup_dist_sq");

    std::vector<double> ns, metrics;
    bool decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    double worst_ratio = 0.0;  // max over k of metric_{k+1} / metric_k
    for (std::size_t k = 0; k < pairs; ++k) {
        const McEstimate m = mc_estimate(sup_sq[k]);
        const double d0 = hstar_norm_squared(initial[k] - initial[k + 1]);
        const double env = stability_envelope(d0, lipschitz, c1, config.horizon);
        std::vector<double> row{static_cast<double>(n_list[k]), static_cast<double>(n_list[k + 1]), d0, m.mean,
                                m.std_error, env};
        if (deterministic) row.push_back(continuum[k]);
        r.rows.push_back(std::move(row));
        r.checks.push_back({"n=" + std::to_string(n_list[k]) + " vs " + std::to_string(n_list[k + 1]) +
                                " mean sup |mu^m - mu^n|^2 within Gronwall envelope 3 d0^2 exp(12 C^2 T + 3 C1^2 T^2)",
                            m.mean, env, m.mean <= env});
        decreasing = decreasing && m.mean < prev;
        if (k > 0) worst_ratio = std::max(worst_ratio, prev > 0.0 ? m.mean / prev : std::numeric_limits<double>::infinity());
        prev = m.mean;
        if (m.mean > 0.0) {
            ns.push_back(n_list[k]);
            metrics.push_back(m.mean);
        }
    }
    if (deterministic) {
        const double na = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> row{static_cast<double>(n_list.back()), na, na, na, na, na, continuum.back()};
        r.rows.push_back(std::move(row));
    }
    r.checks.push_back({"metric strictly decreasing along n_list (largest ratio of consecutive metrics)", worst_ratio,
                        1.0, decreasing});

    if (deterministic) {
        std::vector<double> nd(n_list.begin(), n_list.end());
        r.fitted_order = fitted_order(nd, continuum);
        r.parameters.emplace_back("order fitted to", "continuum_sup_dist_sq");
        for (std::size_t k = 0; k < n_list.size(); ++k) {
            // At t = 0 the cell-midpoint CDF error is at most half a cell mass.
            const double bound = 1.0 / (2.0 * n_list[k]);
            const double d0 = hstar_distance(initial[k], target);
            if (target.kind() == TargetKind::uniform)
                r.checks.push_back({"n=" + std::to_string(n_list[k]) + " initial |mu^n - target| <= 1/(2n)", d0, bound,
                                    d0 <= bound});
        }
    } else if (ns.size() >= 2) {
        r.fitted_order = fitted_order(ns, metrics);
        r.parameters.emplace_back("order fitted to", "mean_sup_dist_sq");
    }
    return r;
}

ExperimentReport run_stability_experiment(const RunConfig& config, const AtomicMeasure& mu0,
                                          const AtomicMeasure& nu0) {
    const Interval I = build_interval(config);
    if (!(mu0.interval() == I) || !(nu0.interval() == I))
        throw std::invalid_argument("stability: initial measures must live on the configured interval");
    if (mu0.size() != nu0.size() || !std::equal(mu0.points().begin(), mu0.points().end(), nu0.points().begin()))
        throw std::invalid_argument("stability: mu0 and nu0 must share the same support");
    if (!is_probability(mu0, 1e-9) || !is_probability(nu0, 1e-9))
        throw std::invalid_argument("stability: mu0 and nu0 must be probability measures");

    const VolatilityField field = build_field(config);
    const bool deterministic = field.is_zero();
    const std::size_t n_paths = deterministic ? 1 : config.n_paths;
    const std::vector<double> support(mu0.points().begin(), mu0.points().end());
    const SimulationConfig sim{support, field, config.dt, config.horizon, config.scheme, config.seed, n_paths};
    const auto x0 = SimplexPoint::from_weights({mu0.weights().begin(), mu0.weights().end()}, 1e-9);
    const auto y0 = SimplexPoint::from_weights({nu0.weights().begin(), nu0.weights().end()}, 1e-9);

    std::vector<double> sup_diff(n_paths), sup_norm(n_paths);
    std::vector<double> diff(support.size());
    for (std::size_t p = 0; p < n_paths; ++p) {
        const SimulationPath a = simulate_path(sim, x0, p);
        const SimulationPath b = simulate_path(sim, y0, p);
        double worst = 0.0, biggest = 0.0;
        for (std::size_t j = 0; j <= a.steps(); ++j) {
            const auto xa = a.state(j), xb = b.state(j);
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = xa[i] - xb[i];
            worst = std::max(worst, hstar_norm_squared(AtomicMeasure(I, support, diff)));
            biggest = std::max(biggest, hstar_norm_squared(AtomicMeasure(I, support, xa)));
        }
        sup_diff[p] = worst;
        sup_norm[p] = biggest;
    }

    const double d0 = hstar_norm_squared(mu0 - nu0);
    const double lipschitz = deterministic ? 0.0 : estimate_lipschitz(field, kLipschitzTrials, config.seed);
    const double c1 = drift_constants(I).c1;
    const double T = config.horizon;
    const double envelope = stability_envelope(d0, lipschitz, c1, T);
    const McEstimate m = mc_estimate(sup_diff);
    const McEstimate s = mc_estimate(sup_norm);

    ExperimentReport r;
    r.name = "stability";
    r.parameters = {{"interval", interval_text(I)},
                    {"support", format_list(support)},
                    {"mu0", format_list(mu0.weights())},
                    {"nu0", format_list(nu0.weights())},
                    {"field", describe_field(field)},
                    {"scheme", std::string(to_string(config.scheme))},
                    {"dt", format_double(config.dt)},
                    {"T", format_double(T)},
                    {"paths", std::to_string(n_paths)},
                    {"seed", std::to_string(config.seed)},
                    {"sigma Lipschitz estimate C", format_double(lipschitz)},
                    {"drift Lipschitz constant C1", format_double(c1)},
                    // K with d0^2 exp(K T^2) equal to the proof's envelope
                    {"equivalent K", format_double((std::log(3.0) + 12.0 * lipschitz * lipschitz * T +
                                                    3.0 * c1 * c1 * T * T) /
                                                   (T * T))}};
    r.columns = {"initial_dist_sq", "mean_sup_dist_sq", "std_error", "envelope", "mean_sup_norm_sq"};
    r.rows.push_back({d0, m.mean, m.std_error, envelope, s.mean});
    r.checks.push_back({"mean sup |mu_t - nu_t|^2 <= 3 |mu0 - nu0|^2 exp(12 C^2 T + 3 C1^2 T^2)", m.mean, envelope,
                        m.mean <= envelope});
    r.checks.push_back({"mean sup |mu_t|^2 <= 1 + a + b (finite S_T norm)", s.mean, 1.0 + I.length(),
                        s.mean <= 1.0 + I.length() + 1e-12});
    return r;
}

PathDiagnostics diagnose_ensemble(const SimulationConfig& sim, const SimplexPoint& x0, const AtomicMeasure& mu0,
                                  std::span<const double> maturities) {
    struct PerPath {
        std::vector<double> discount;
        std::vector<double> rate;
        double mass_error = 0.0;
        double min_weight = 0.0;
        double min_positive = 0.0;
    };
    const std::vector<double> mats(maturities.begin(), maturities.end());
    const auto per_path = map_ensemble(sim, x0, [&](const SimulationPath& path) {
        PerPath out;
        for (double T : mats) {
            out.discount.push_back(discount_factor(path, T));
            out.rate.push_back(rate_at(path, T));
        }
        double mass_err = 0.0, min_w = std::numeric_limits<double>::infinity(),
               min_pos = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j <= path.steps(); ++j) {
            const auto x = path.state(j);
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                s += x[i];
                min_w = std::min(min_w, x[i]);
                if (x0[i] > 0.0) min_pos = std::min(min_pos, x[i]);
            }
            mass_err = std::max(mass_err, std::abs(s - 1.0));
        }
        out.mass_error = mass_err;
        out.min_weight = min_w;
        out.min_positive = min_pos;
        return out;
    });

    PathDiagnostics d;
    d.min_weight = std::numeric_limits<double>::infinity();
    d.min_positive_start_weight = std::numeric_limits<double>::infinity();
    std::vector<double> sample(per_path.size());
    const double R0 = short_rate(mu0);
    for (std::size_t m = 0; m < mats.size(); ++m) {
        for (std::size_t p = 0; p < per_path.size(); ++p) sample[p] = per_path[p].discount[m];
        d.martingale.push_back(martingale_residual(sample, bond_price(mu0, mats[m])));
        for (std::size_t p = 0; p < per_path.size(); ++p) sample[p] = per_path[p].rate[m];
        d.supermartingale.push_back(supermartingale_check(sample, R0));
    }
    for (const auto& p : per_path) {
        d.max_mass_error = std::max(d.max_mass_error, p.mass_error);
        d.min_weight = std::min(d.min_weight, p.min_weight);
        d.min_positive_start_weight = std::min(d.min_positive_start_weight, p.min_positive);
    }
    return d;
}

ExperimentReport run_check(const RunConfig& config) {
    ResolvedRun run = resolve(config);
    if (config.maturities.empty()) throw ConfigError("price.maturities", "check needs at least one maturity");
    for (double T : config.maturities)
        if (!(T > 0.0)) throw ConfigError("price.maturities", "maturities must be positive");
    const double longest = *std::max_element(config.maturities.begin(), config.maturities.end());
    run.sim.horizon = std::max(run.sim.horizon, longest);

    const PathDiagnostics d = diagnose_ensemble(run.sim, run.x0, run.mu0, config.maturities);
    const double bias = 10.0 * run.sim.dt;

    ExperimentReport r;
    r.name = "martingale and invariant diagnostics";
    r.parameters = {{"field", describe_field(run.sim.field)},
                    {"scheme", std::string(to_string(run.sim.scheme))},
                    {"dt", format_double(run.sim.dt)},
                    {"T", format_double(run.sim.horizon)},
                    {"paths", std::to_string(run.sim.n_paths)},
                    {"seed", std::to_string(run.sim.seed)},
                    {"R_0", format_double(short_rate(run.mu0))}};
    r.columns = {"maturity", "P0", "discount_residual", "discount_se", "rate_drift", "rate_se"};
    for (std::size_t m = 0; m < config.maturities.size(); ++m) {
        const double T = config.maturities[m];
        const auto& mr = d.martingale[m];
        const auto& sr = d.supermartingale[m];
        r.rows.push_back({T, bond_price(run.mu0, T), mr.mean, mr.std_error, sr.mean, sr.std_error});
        const double tol = 3.0 * mr.std_error + bias;
        r.checks.push_back({"T=" + format_double(T) + " |E[exp(-int R)] - P(0,T)| <= 3 SE + 10 dt",
                            std::abs(mr.mean), tol, std::abs(mr.mean) <= tol});
        r.checks.push_back({"T=" + format_double(T) + " E[R_T] - R_0 <= 3 SE", sr.mean, 3.0 * sr.std_error,
                            sr.mean <= 3.0 * sr.std_error});
    }
    r.checks.push_back({"max |sum x - 1| over all states", d.max_mass_error, 1e-12, d.max_mass_error <= 1e-12});
    r.checks.push_back({"min weight over all states", d.min_weight, 0.0, d.min_weight >= 0.0});
    if (run.sim.scheme == Scheme::exponential)
        r.checks.push_back({"min weight of initially positive atoms (strictly positive)", d.min_positive_start_weight,
                            0.0, d.min_positive_start_weight > 0.0});
    return r;
}

}  // namespace spectral::harness
