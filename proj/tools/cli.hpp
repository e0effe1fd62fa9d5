#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace randig::cli {

enum ExitCode : int { kPass = 0, kOracleFailure = 1, kUsageError = 2 };

/// Entry point of the `randig` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randig::cli
