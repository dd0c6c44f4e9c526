#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lh::cli {

enum ExitCode : int { Ok = 0, VerifyFailed = 1, Usage = 2, Runtime = 3 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lh::cli
