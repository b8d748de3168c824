#pragma once

#include <iosfwd>

namespace treecat {

// Entry point for the treecat command line tool. Parses argv, runs the
// requested subcommand, writes results to `out` and diagnostics to `err`.
// Returns the process exit code: 0 on success, 2 for invalid input or
// usage errors, 3 when a resource guard triggers, 1 for internal failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace treecat
