#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccqbf::cli {

inline constexpr int kExitTrue = 10;
inline constexpr int kExitFalse = 20;
inline constexpr int kExitError = 1;

/// Runs one command line. `args` excludes the program name.
/// Returns 10/20 for solve verdicts, 0 for other successes and 1 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccqbf::cli
