#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace capstone::cli {

// Parses argv (without the program name), dispatches to the engine and
// writes documents to `out` (or --out) and diagnostics to `err`.
// Exit codes: 0 success, 1 validation/usage error, 2 equilibrium search did
// not converge, 3 I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capstone::cli
