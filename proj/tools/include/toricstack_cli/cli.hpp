#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricstack::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 1,
  kFalseVerdict = 2,
  kUnknownVerdict = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics in text mode to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace toricstack::cli
