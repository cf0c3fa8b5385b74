#pragma once

#include <iosfwd>

namespace carefree::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kComputationError = 2;

// Parses and runs one subcommand: constants, count, scan, montecarlo, selftest.
// Results go to `out` (or to --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace carefree::cli
