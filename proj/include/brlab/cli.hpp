#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace brlab {

/// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitArithmetic = 3,
  kExitCrossCheck = 4,
};

/// Flag combinations CLI11 accepts but the command rejects.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagreed. what() holds
/// the JSON record of both values.
struct CrossCheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes the diagnostic for a failed command and returns its exit status.
int report_failure(const std::exception& e, std::ostream& out, std::ostream& err);

/// Runs the command line `args` (without the program name), writing machine
/// output to `out` and diagnostics to `err`. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brlab
