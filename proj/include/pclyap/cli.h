#pragma once

#include <ostream>

namespace pclyap::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kSuccess = 0,
  /// A checked property is false or a verification failed.
  kPropertyFalse = 1,
  kUsage = 2,
  /// Resource cap exceeded or numerical failure.
  kResource = 3,
};

/// Runs one subcommand. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pclyap::cli
