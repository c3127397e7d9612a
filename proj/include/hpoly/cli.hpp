#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hpoly::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kDomainError = 3,
  kBudgetError = 4,
  kOverflowError = 5,
  kUsageError = 64,
};

/// Entry point of the hpoly tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hpoly::cli
