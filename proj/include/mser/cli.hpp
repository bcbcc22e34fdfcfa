#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mser {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitInternal = 3 };

/// Runs one `mser` command line. `args` excludes the program name. Reports go
/// to `out`, diagnostics and usage text to `err`; a file argument of "-"
/// reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace mser
