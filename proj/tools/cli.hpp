#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chtrace::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

/// Runs one command line (args[0] is the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chtrace::cli
