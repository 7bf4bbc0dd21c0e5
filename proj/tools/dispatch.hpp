#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rwrers::cli {

enum ExitCode : int {
  kSuccess = 0,
  kPropertyFailed = 1,
  kUsageError = 2,
  kNumericalError = 3,
};

// Parses argv, runs one subcommand through the C API and writes
// <name>.jsonl, <name>.summary.json, <name>.manifest.json (and <name>.csv
// with --csv) into the output directory.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rwrers::cli
