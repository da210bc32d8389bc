#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nchol::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kUsageError = 2 };

// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nchol::cli
