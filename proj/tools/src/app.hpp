#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cbolab::cli {

enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_assertion = 2 };

// Full command line without the program name, e.g. {"run", "x.cfg", "--check"}.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbolab::cli
