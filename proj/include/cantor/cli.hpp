#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cantor::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2 };

/// Runs one command. `args[0]` is the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cantor::cli
