#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace finegrad::cli {

enum ExitCode : int { ok = 0, mismatch = 1, usage = 2, missing_data = 3 };

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace finegrad::cli
