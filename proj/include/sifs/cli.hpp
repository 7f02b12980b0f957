#pragma once

#include <string>
#include <vector>

namespace sifs::cli {

/// Runs one CLI invocation. `args` excludes the program name.
/// Exit codes: 0 success, 1 a check failed, 2 bad input or usage.
int run(const std::vector<std::string>& args);

std::string version_string();

}  // namespace sifs::cli
