#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nyprox::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { Success = 0, UsageFailure = 1, DataFailure = 2 };

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace nyprox::cli
