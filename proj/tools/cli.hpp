#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace srm::cli {

/// Exit codes: 0 all checks passed, 1 a check failed, 2 usage error, 3 I/O error.
enum ExitCode : int { ok = 0, check_failed = 1, usage = 2, io_error = 3 };

/// Runs one command line (without the program name). Reports go to the --out
/// path, or to `out` when --out is "-" or absent; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srm::cli
