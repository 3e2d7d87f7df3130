#pragma once

#include <iosfwd>

namespace jdd::cli {

/// Process exit codes. Stable across versions.
enum ExitCode : int {
  kSuccess = 0,  // also: test accepted the null hypothesis
  kUsage = 2,    // bad flags or bad input data
  kReject = 3,   // test rejected the null hypothesis
  kBoundViolation = 4,
};

/// Entry point of the `jdd` tool. Normal output goes to `out`, diagnostics
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jdd::cli
