#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bilocal::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 2,
  kConstraintViolation = 3,
};

/// Runs `bilocal <args...>`; args excludes the program name. Data goes to
/// `out` (or the --out target), diagnostics and summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bilocal::cli
