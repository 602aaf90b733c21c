#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gcap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAccuracy = 3;

/// Parses `args` (without the program name), runs the subcommand and writes records to `out`.
/// Diagnostics go to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcap::cli
