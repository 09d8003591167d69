#pragma once

// CSV output: header row, '.' decimal separator, numbers in the shortest form
// that parses back to the same double.

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "spectral/pricing.hpp"
#include "spectral/sde_solver.hpp"

namespace spectral::harness {

std::string format_double(double v);
std::string format_list(std::span<const double> values);

/// path,time,x_1..x_n,R for each path in order.
void write_paths_csv(std::ostream& out, std::span<const SimulationPath> paths, std::size_t first_path = 0);

/// maturity,price,yield
void write_curve_csv(std::ostream& out, const YieldCurve& curve);

/// time,x_1..x_n,R,G for the noiseless flow sampled at `steps + 1` times in [0, t].
void write_flow_csv(std::ostream& out, const AtomicMeasure& mu0, double t, int steps);

}  // namespace spectral::harness
