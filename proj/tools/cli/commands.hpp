#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasync::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O failure, or an oracle check that did not pass
  kExitUsage = 2,    // bad flags or arguments outside the model's domain
};

/// Entry point of the `phasync` tool. args excludes the program name.
/// Normal output goes to `out` unless --out redirects it; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasync::cli
