#include "spectral/harness/csv.hpp"

#include <charconv>
#include <stdexcept>

#include "spectral/operators.hpp"
#include "spectral/oracles.hpp"

namespace spectral::harness {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

std::string format_list(std::span<const double> values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) s += ", ";
        s += format_double(values[i]);
    }
    return s;
}

namespace {

void write_atom_header(std::ostream& out, std::size_t n) {
    for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
}

}  // namespace

void write_paths_csv(std::ostream& out, std::span<const SimulationPath> paths, std::size_t first_path) {
    const std::size_t n = paths.empty() ? 0 : paths.front().atoms();
    out << "path,time";
    write_atom_header(out, n);
    out << ",R\n";
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const auto& path = paths[p];
        const auto t = path.times();
        for (std::size_t j = 0; j < t.size(); ++j) {
            out << (first_path + p) << ',' << format_double(t[j]);
            for (double x : path.state(j)) out << ',' << format_double(x);
            out << ',' << format_double(path.rates()[j]) << '\n';
        }
    }
}

void write_curve_csv(std::ostream& out, const YieldCurve& curve) {
    out << "maturity,price,yield\n";
    for (std::size_t j = 0; j < curve.maturities.size(); ++j)
        out << format_double(curve.maturities[j]) << ',' << format_double(curve.prices[j]) << ','
            << format_double(curve.yields[j]) << '\n';
}

void write_flow_csv(std::ostream& out, const AtomicMeasure& mu0, double t, int steps) {
    if (steps < 1) throw std::invalid_argument("flow: steps must be >= 1");
    out << "time";
    write_atom_header(out, mu0.size());
    out << ",R,G\n";
    for (int k = 0; k <= steps; ++k) {
        const double s = k == steps ? t : t * k / steps;
        const AtomicMeasure mu = oracles::deterministic_flow(mu0, s);
        out << format_double(s);
        for (double w : mu.weights()) out << ',' << format_double(w);
        out << ',' << format_double(short_rate(mu)) << ',' << format_double(oracles::flow_normalizer(mu0, s))
            << '\n';
    }
}

}  // namespace spectral::harness
