#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gottlieb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitInternal = 2;

/// Runs one command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gottlieb
