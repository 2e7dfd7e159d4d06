#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsd {

enum ExitCode : int {
  kExitOk = 0,
  kExitDiagnostics = 1,
  kExitPrecondition = 2,
  kExitSearchExhausted = 3,
};

/// Runs the command-line front end. `args` excludes the program name; a
/// FILE argument of "-" reads from `in`.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
            std::ostream &err);

} // namespace rsd
