#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace restlint {

// Full command-line front-end; returns the process exit code
// (0 = clean, 1 = findings at/above the fail threshold, 2 = usage/input error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace restlint
