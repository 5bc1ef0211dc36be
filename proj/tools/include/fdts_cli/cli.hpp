#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdts::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

/// Runs the `fdts` command line with `args` (program name excluded).
/// Returns the process exit code; never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a real list: "a,b,c" or an inclusive range "start:stop:step".
std::vector<double> parse_real_list(const std::string& text);

}  // namespace fdts::cli
