#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fiberlab::cli {

/// Exit codes.
constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kCeiling = 3;

/// Runs the command line (args excludes the program name) and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fiberlab::cli
