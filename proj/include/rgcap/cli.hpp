#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgcap::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kAssertionFailed = 2,
  kBudgetRefused = 3,
};

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a flat "key=value" config file ('#' starts a comment) into
/// "--key=value" arguments. Throws std::runtime_error on malformed lines.
std::vector<std::string> config_file_arguments(const std::string& path);

}  // namespace rgcap::cli
