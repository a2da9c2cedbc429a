#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latnet::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kDataFormat = 3,
    kNumeric = 4,
};

/// Runs the `latnet` command line. `args` excludes the program name.
/// Primary output goes to `out`, diagnostics and summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latnet::cli
