#pragma once

#include <string>
#include <vector>

namespace steadycert {

/// Entry point for the command-line tool, separated from main() so tests can
/// drive it in-process. Returns the process exit code: 0 success, 1 usage or
/// domain error, 2 when the tool ran but a certified expectation was violated.
int run_cli(std::vector<std::string> args);

}  // namespace steadycert
