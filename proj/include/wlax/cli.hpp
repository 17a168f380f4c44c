#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wlax {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitInternal = 3 };

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wlax
