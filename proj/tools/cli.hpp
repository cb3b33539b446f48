#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adiaclone::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalError = 2 };

/// Entry point behind `adiaclone`. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adiaclone::cli
