#pragma once

#include <string>
#include <vector>

namespace stocksig {

// Parses and executes one CLI invocation (no program name in args).
// Returns the process exit code: 0 success, 2 config errors, 3 data
// errors, 4 numeric errors, 1 anything else.
int run_cli(const std::vector<std::string>& args);

}  // namespace stocksig
