#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace superschemes::cli {

/// Exit codes: 0 converged / completed, 1 usage or I/O error, 2 breakdown or
/// divergence (or a failed gradient check).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a flat `key = value` file. Blank lines and lines starting with '#'
/// or ';' are skipped; keys may carry a leading "--".
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace superschemes::cli
