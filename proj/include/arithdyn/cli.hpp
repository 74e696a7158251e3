#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace arithdyn::cli {

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`. Returns 0 for PASS/INFO, 1 for FAIL and 2 for
/// usage, configuration or budget errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arithdyn::cli
