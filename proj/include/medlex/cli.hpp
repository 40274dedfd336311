#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace medlex::cli {

/// Process exit codes of the `medlex` tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,          // bad command line
  kInputError = 2,     // missing, unreadable or malformed input; unwritable output
  kLintError = 3,      // table/stoplist lint failed (without --lax)
  kMergeConflict = 4,  // equally trusted resources disagree
  kMissingGold = 5,    // gold term without a prediction
};

/// Runs the tool with `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace medlex::cli
