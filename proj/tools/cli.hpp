#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regioncert::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // nothing certified, no path, violations, failed campaign
inline constexpr int kExitUsage = 2;     // bad flags, unreadable or malformed input, infeasible request

/// Runs one `regioncert` invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regioncert::cli
