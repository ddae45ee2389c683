#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrmp::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kStructuralError = 2, kCheckFailed = 3 };

// Runs the command line `args` (without the program name). Results go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lrmp::cli
