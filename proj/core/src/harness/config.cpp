#include "spectral/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "spectral/harness/csv.hpp"

namespace spectral::harness {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty() || !std::isfinite(v))
        throw ConfigError(key, "expected a finite number, got '" + std::string(text) + "'");
    return v;
}

template <class Int>
Int parse_integer(const std::string& key, std::string_view text) {
    text = trim(text);
    Int v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty())
        throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
    return v;
}

std::vector<double> parse_reals(const std::string& key, std::string_view text) {
    std::vector<double> out;
    text = trim(text);
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_real(key, text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<int> parse_ints(const std::string& key, std::string_view text) {
    std::vector<int> out;
    for (double v : parse_reals(key, text)) {
        if (v != std::floor(v) || v < 1.0 || v > 1e9) throw ConfigError(key, "expected positive integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string_view to_string(FieldPreset p) {
    switch (p) {
        case FieldPreset::zero: return "zero";
        case FieldPreset::linear: return "linear";
        case FieldPreset::two_factor: return "two-factor";
        case FieldPreset::none: break;
    }
    return "none";
}

FieldPreset parse_preset(const std::string& key, std::string_view s) {
    if (s == "zero") return FieldPreset::zero;
    if (s == "linear") return FieldPreset::linear;
    if (s == "two-factor") return FieldPreset::two_factor;
    if (s == "none") return FieldPreset::none;
    throw ConfigError(key, "unknown preset '" + std::string(s) + "' (expected zero, linear or two-factor)");
}

// field.h<k>.<attr> -> (k, attr), k >= 1
bool parse_factor_key(const std::string& key, std::size_t& k, std::string& attr) {
    constexpr std::string_view prefix = "field.h";
    if (key.rfind(prefix, 0) != 0) return false;
    const auto dot = key.find('.', prefix.size());
    if (dot == std::string::npos) return false;
    const std::string_view digits(key.data() + prefix.size(), dot - prefix.size());
    std::size_t v = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size() || v == 0) return false;
    k = v;
    attr = key.substr(dot + 1);
    return true;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig c;
    std::map<std::string, std::string> seen;
    std::size_t declared_factors = 0;
    bool have_factor_count = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
        if (!seen.emplace(key, std::string(value)).second) throw ConfigError(key, "given more than once");

        std::size_t k = 0;
        std::string attr;
        if (key == "interval.a") c.a = parse_real(key, value);
        else if (key == "interval.b") c.b = parse_real(key, value);
        else if (key == "support.points") c.support_points = parse_reals(key, value);
        else if (key == "support.n") c.support_n = parse_integer<std::size_t>(key, value);
        else if (key == "weights.values") c.weights = parse_reals(key, value);
        else if (key == "weights.target") {
            try {
                c.target = parse_target_kind(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, e.what());
            }
        } else if (key == "target.rate") c.target_rate = parse_real(key, value);
        else if (key == "target.points") c.target_points = parse_reals(key, value);
        else if (key == "target.weights") c.target_weights = parse_reals(key, value);
        else if (key == "field.preset") c.field_preset = parse_preset(key, value);
        else if (key == "field.beta") c.field_beta = parse_real(key, value);
        else if (key == "field.factors") {
            declared_factors = parse_integer<std::size_t>(key, value);
            have_factor_count = true;
            if (c.factors.size() < declared_factors) c.factors.resize(declared_factors);
        } else if (parse_factor_key(key, k, attr)) {
            if (c.factors.size() < k) c.factors.resize(k);
            auto& f = c.factors[k - 1];
            if (attr == "knots") f.knots = parse_reals(key, value);
            else if (attr == "values") f.values = parse_reals(key, value);
            else if (attr == "beta") f.beta = parse_real(key, value);
            else throw ConfigError(key, "unknown key");
        } else if (key == "sim.dt") c.dt = parse_real(key, value);
        else if (key == "sim.T") c.horizon = parse_real(key, value);
        else if (key == "sim.paths") c.n_paths = parse_integer<std::size_t>(key, value);
        else if (key == "sim.seed") c.seed = parse_integer<std::uint64_t>(key, value);
        else if (key == "sim.scheme") {
            try {
                c.scheme = parse_scheme(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, e.what());
            }
        } else if (key == "price.maturities") c.maturities = parse_reals(key, value);
        else if (key == "converge.n_list") c.n_list = parse_ints(key, value);
        else if (key == "stability.nu") c.nu_weights = parse_reals(key, value);
        else if (key == "flow.t") c.flow_t = parse_real(key, value);
        else if (key == "flow.steps") c.flow_steps = parse_integer<int>(key, value);
        else throw ConfigError(key, "unknown key");
    }
    if (have_factor_count && c.factors.size() != declared_factors)
        throw ConfigError("field.factors", "declares " + std::to_string(declared_factors) + " factors but h" +
                                               std::to_string(c.factors.size()) + " is configured");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream o;
    o << "interval.a = " << format_double(c.a) << '\n';
    o << "interval.b = " << format_double(c.b) << '\n';
    if (!c.support_points.empty()) o << "support.points = " << format_list(c.support_points) << '\n';
    if (c.support_n > 0) o << "support.n = " << c.support_n << '\n';
    if (!c.weights.empty()) o << "weights.values = " << format_list(c.weights) << '\n';
    if (c.target) o << "weights.target = " << to_string(*c.target) << '\n';
    o << "target.rate = " << format_double(c.target_rate) << '\n';
    if (!c.target_points.empty()) o << "target.points = " << format_list(c.target_points) << '\n';
    if (!c.target_weights.empty()) o << "target.weights = " << format_list(c.target_weights) << '\n';
    o << "field.preset = " << to_string(c.field_preset) << '\n';
    o << "field.beta = " << format_double(c.field_beta) << '\n';
    if (!c.factors.empty()) o << "field.factors = " << c.factors.size() << '\n';
    for (std::size_t k = 0; k < c.factors.size(); ++k) {
        const auto& f = c.factors[k];
        const std::string p = "field.h" + std::to_string(k + 1) + ".";
        if (!f.knots.empty()) o << p << "knots = " << format_list(f.knots) << '\n';
        if (!f.values.empty()) o << p << "values = " << format_list(f.values) << '\n';
        o << p << "beta = " << format_double(f.beta) << '\n';
    }
    o << "sim.dt = " << format_double(c.dt) << '\n';
    o << "sim.T = " << format_double(c.horizon) << '\n';
    o << "sim.paths = " << c.n_paths << '\n';
    o << "sim.seed = " << c.seed << '\n';
    o << "sim.scheme = " << to_string(c.scheme) << '\n';
    if (!c.maturities.empty()) o << "price.maturities = " << format_list(c.maturities) << '\n';
    if (!c.n_list.empty()) {
        o << "converge.n_list = ";
        for (std::size_t i = 0; i < c.n_list.size(); ++i) o << (i ? ", " : "") << c.n_list[i];
        o << '\n';
    }
    if (!c.nu_weights.empty()) o << "stability.nu = " << format_list(c.nu_weights) << '\n';
    o << "flow.t = " << format_double(c.flow_t) << '\n';
    o << "flow.steps = " << c.flow_steps << '\n';
    return o.str();
}

// ---------------------------------------------------------------------------

Interval build_interval(const RunConfig& c) {
    try {
        return Interval(c.a, c.b);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("interval.a", e.what());
    }
}

VolatilityField build_field(const RunConfig& c) {
    const Interval I = build_interval(c);
    if (c.field_preset != FieldPreset::none && !c.factors.empty())
        throw ConfigError("field.preset", "cannot be combined with explicit field.h<k> factors");
    if (c.field_beta < 0.0) throw ConfigError("field.beta", "must be >= 0");
    switch (c.field_preset) {
        case FieldPreset::zero: return VolatilityField::zero(I);
        case FieldPreset::linear:
            return VolatilityField::centered(I, {PiecewiseLinearFn::identity(I)}, {c.field_beta});
        case FieldPreset::two_factor: {
            // r, and a tent of height L/2 peaking mid-interval
            const double mid = 0.5 * (I.lower() + I.upper());
            return VolatilityField::centered(
                I,
                {PiecewiseLinearFn::identity(I), PiecewiseLinearFn::hat(I.lower(), mid, I.upper(), 0.5 * I.length())},
                {c.field_beta, c.field_beta});
        }
        case FieldPreset::none: break;
    }
    std::vector<PiecewiseLinearFn> h;
    std::vector<double> beta;
    for (std::size_t k = 0; k < c.factors.size(); ++k) {
        const auto& f = c.factors[k];
        const std::string p = "field.h" + std::to_string(k + 1);
        if (f.knots.empty()) throw ConfigError(p + ".knots", "missing");
        try {
            h.emplace_back(f.knots, f.values);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(p + ".values", e.what());
        }
        if (f.beta < 0.0) throw ConfigError(p + ".beta", "must be >= 0");
        for (double r : f.knots)
            if (!I.contains(r)) throw ConfigError(p + ".knots", "knot outside the interval");
        beta.push_back(f.beta);
    }
    if (h.empty()) return VolatilityField::zero(I);
    return VolatilityField::centered(I, std::move(h), std::move(beta));
}

Target build_target(const RunConfig& c) {
    const Interval I = build_interval(c);
    const TargetKind kind = c.target.value_or(TargetKind::uniform);
    switch (kind) {
        case TargetKind::uniform: return Target::uniform(I);
        case TargetKind::truncated_exponential: return Target::truncated_exponential(I, c.target_rate);
        case TargetKind::two_point:
            if (c.target_points.empty()) return Target::two_point(I);
            try {
                return Target::two_point(I, c.target_points, c.target_weights);
            } catch (const std::exception& e) {
                throw ConfigError("target.points", e.what());
            }
    }
    return Target::uniform(I);
}

ResolvedRun resolve(const RunConfig& c) {
    const Interval I = build_interval(c);
    VolatilityField field = build_field(c);

    if (!c.support_points.empty() && c.support_n > 0)
        throw ConfigError("support.n", "give either support.points or support.n, not both");
    if (c.target && !c.weights.empty())
        throw ConfigError("weights.target", "give either weights.values or weights.target, not both");

    std::vector<double> support;
    std::vector<double> weights;
    if (c.target) {
        if (!c.support_points.empty()) throw ConfigError("support.points", "a target discretizes on support.n cells");
        if (c.support_n == 0) throw ConfigError("support.n", "required with weights.target");
        const AtomicMeasure mu = discretize_target(build_target(c), static_cast<int>(c.support_n));
        support.assign(mu.points().begin(), mu.points().end());
        weights.assign(mu.weights().begin(), mu.weights().end());
    } else {
        if (!c.support_points.empty()) {
            support = c.support_points;
        } else if (c.support_n > 0) {
            const double h = I.length() / static_cast<double>(c.support_n);
            for (std::size_t i = 0; i < c.support_n; ++i) support.push_back(I.lower() + (i + 0.5) * h);
        } else {
            throw ConfigError("support.points", "missing (give support.points or support.n)");
        }
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (!I.contains(support[i])) throw ConfigError("support.points", "atom outside the interval");
            if (i > 0 && !(support[i] > support[i - 1]))
                throw ConfigError("support.points", "atoms must be distinct and ascending");
        }
        if (c.weights.empty()) {
            weights.assign(support.size(), 1.0 / static_cast<double>(support.size()));
        } else {
            if (c.weights.size() != support.size())
                throw ConfigError("weights.values", "expected " + std::to_string(support.size()) + " weights");
            weights = c.weights;
        }
    }

    SimplexPoint x0 = [&] {
        try {
            return SimplexPoint::from_weights(weights, 1e-9);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("weights.values", e.what());
        }
    }();

    SimulationConfig sim{support, std::move(field), c.dt, c.horizon, c.scheme, c.seed, c.n_paths};
    try {
        sim.validate();
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        const std::string key = what.rfind("dt", 0) == 0          ? "sim.dt"
                                : what.rfind("T:", 0) == 0        ? "sim.T"
                                : what.rfind("n_paths", 0) == 0   ? "sim.paths"
                                                                  : "support.points";
        throw ConfigError(key, what);
    }
    AtomicMeasure mu0(I, support, x0.weights());
    return ResolvedRun{I, std::move(sim), std::move(mu0), std::move(x0)};
}

}  // namespace spectral::harness
