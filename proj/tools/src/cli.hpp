#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdsim::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kSemantic = 3, kInternal = 4 };

// Runs the command line `args` (args[0] is the program name) and returns the
// process exit code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdsim::cli
