#pragma once

#include "report.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace resbound::cli {

/// Runs the command line (arguments without the program name) and returns
/// the process exit code. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace resbound::cli
