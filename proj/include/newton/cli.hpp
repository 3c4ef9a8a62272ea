#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace newton {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitUsage = 64;

/// Runs the newton-calc command line. `args` excludes the program name.
/// Tables go to `out`, diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace newton
