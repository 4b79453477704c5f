#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracdi::cli {

enum ExitCode { kOk = 0, kUsage = 1, kNumeric = 2, kVerifyFailed = 3 };

/// Runs one command line (without the program name). Data goes to `out`,
/// JSON diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracdi::cli
