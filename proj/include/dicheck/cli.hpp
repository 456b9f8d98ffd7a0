#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dicheck::cli {

// Exit-code contract: 0 clean, 1 findings/violations, 2 usage/parse errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation of the tool. `args` excludes the program name.
/// Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dicheck::cli
