#ifndef ARPE_CLI_HPP
#define ARPE_CLI_HPP

#include <iosfwd>

namespace arpe {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitDegenerate = 2,
  kExitReferenceMismatch = 3,
};

/// Entry point of the `arpe` tool. Results go to `out` (or the --out file),
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arpe

#endif  // ARPE_CLI_HPP
