#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace convexstate::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kInvariant = 4 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace convexstate::cli
