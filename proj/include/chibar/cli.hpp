#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chibar {

// Runs the command-line front end on already-split arguments (no argv[0]).
// Writes results to `out` and diagnostics to `err`. Exit codes: 0 success,
// 1 usage error, 2 acceptance-band failure (compare).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chibar
