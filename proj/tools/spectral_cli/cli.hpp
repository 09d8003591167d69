#pragma once

#include <ostream>

namespace spectral::cli {

enum ExitCode : int { ok = 0, validation_error = 1, bound_failed = 2 };

/// Entry point of the `spectral` tool. Subcommands: simulate, price, flow,
/// check, converge, stability. Output files go to --out (default ".").
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spectral::cli
