#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trafficflow::cli {

// Bad flags or parameter values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses argv, runs the selected subcommand and writes CSV to `out` (or to
// the --output file). Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trafficflow::cli
