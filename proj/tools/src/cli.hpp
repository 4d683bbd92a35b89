#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mecsr::cli {

// Process exit codes.
enum ExitCode : int {
  kFeasible = 0,
  kInfeasible = 1,
  kUsage = 2,
  kRefused = 3,
  kBudget = 4,
  kInternal = 5,
};

// Runs one command line (args[0] is the program name). Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

// Parses "a..b", "a,b,c" or "a" into a list of sizes; "" gives an empty list.
std::vector<std::size_t> parse_grid(const std::string& text);

}  // namespace mecsr::cli
