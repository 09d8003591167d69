#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "spectral/harness/config.hpp"
#include "spectral/harness/csv.hpp"
#include "spectral/harness/experiments.hpp"
#include "spectral/pricing.hpp"

namespace spectral::cli {

namespace {

namespace fs = std::filesystem;
using harness::ConfigError;
using harness::RunConfig;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::optional<double> flow_t;
    std::optional<int> flow_steps;
};

std::ofstream open_output(const Options& opt, const std::string& name) {
    fs::create_directories(opt.out_dir);
    const fs::path path = fs::path(opt.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    return f;
}

RunConfig load(const Options& opt) {
    if (opt.config_path.empty()) throw ConfigError("--config", "a config file is required");
    RunConfig c = harness::load_config(opt.config_path);
    if (opt.seed) c.seed = *opt.seed;
    if (opt.flow_t) c.flow_t = *opt.flow_t;
    if (opt.flow_steps) c.flow_steps = *opt.flow_steps;
    return c;
}

int emit_report(const Options& opt, const harness::ExperimentReport& report, std::ostream& out) {
    const std::string text = report.to_text();
    open_output(opt, "report.txt") << text;
    out << text;
    return report.passed() ? ok : bound_failed;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
    const auto run = harness::resolve(load(opt));
    const Ensemble e = simulate_ensemble(run.sim, run.x0);
    auto f = open_output(opt, "paths.csv");
    harness::write_paths_csv(f, e.paths, e.first_path);
    out << "wrote " << e.paths.size() << " path(s) to " << (fs::path(opt.out_dir) / "paths.csv").string() << '\n';
    return ok;
}

int cmd_price(const Options& opt, std::ostream& out) {
    const RunConfig c = load(opt);
    const auto run = harness::resolve(c);
    const YieldCurve curve = yield_curve(run.mu0, c.maturities);
    auto f = open_output(opt, "curve.csv");
    harness::write_curve_csv(f, curve);
    harness::write_curve_csv(out, curve);
    return ok;
}

int cmd_flow(const Options& opt, std::ostream& out) {
    const RunConfig c = load(opt);
    if (!(c.flow_t >= 0.0)) throw ConfigError("flow.t", "must be >= 0");
    if (c.flow_steps < 1) throw ConfigError("flow.steps", "must be >= 1");
    const auto run = harness::resolve(c);
    auto f = open_output(opt, "flow.csv");
    harness::write_flow_csv(f, run.mu0, c.flow_t, c.flow_steps);
    harness::write_flow_csv(out, run.mu0, c.flow_t, c.flow_steps);
    return ok;
}

int cmd_check(const Options& opt, std::ostream& out) { return emit_report(opt, harness::run_check(load(opt)), out); }

int cmd_converge(const Options& opt, std::ostream& out) {
    const RunConfig c = load(opt);
    return emit_report(opt, harness::run_convergence_experiment(c, c.n_list), out);
}

int cmd_stability(const Options& opt, std::ostream& out) {
    const RunConfig c = load(opt);
    const auto run = harness::resolve(c);
    if (c.nu_weights.empty()) throw ConfigError("stability.nu", "missing (weights of the second initial measure)");
    if (c.nu_weights.size() != run.mu0.size())
        throw ConfigError("stability.nu", "expected " + std::to_string(run.mu0.size()) + " weights");
    const AtomicMeasure nu0 = run.mu0.with_weights(c.nu_weights);
    if (!is_probability(nu0, 1e-9)) throw ConfigError("stability.nu", "weights must form a probability vector");
    return emit_report(opt, harness::run_stability_experiment(c, run.mu0, nu0), out);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Measure-valued term-structure simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "Run configuration file")->required();
        sub->add_option("--seed", opt.seed, "Override sim.seed");
        sub->add_option("--out", opt.out_dir, "Output directory");
    };
    auto* simulate = app.add_subcommand("simulate", "Simulate paths, write paths.csv");
    auto* price = app.add_subcommand("price", "Yield curve of the initial measure, write curve.csv");
    auto* flow = app.add_subcommand("flow", "Noiseless flow table, write flow.csv");
    auto* check = app.add_subcommand("check", "Martingale, supermartingale and invariant diagnostics");
    auto* converge = app.add_subcommand("converge", "Atomic approximation convergence experiment");
    auto* stability = app.add_subcommand("stability", "Stability experiment against the Gronwall envelope");
    for (auto* s : {simulate, price, flow, check, converge, stability}) add_common(s);
    flow->add_option("--t", opt.flow_t, "Flow horizon (overrides flow.t)");
    flow->add_option("--steps", opt.flow_steps, "Rows after t = 0 (overrides flow.steps)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : validation_error;
    }

    try {
        if (*simulate) return cmd_simulate(opt, out);
        if (*price) return cmd_price(opt, out);
        if (*flow) return cmd_flow(opt, out);
        if (*check) return cmd_check(opt, out);
        if (*converge) return cmd_converge(opt, out);
        if (*stability) return cmd_stability(opt, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return validation_error;
    }
    return validation_error;
}

}  // namespace spectral::cli
