#pragma once

// Command-line front end. run_cli is the whole program minus argv plumbing so
// tests can drive it in-process.
//
// Exit codes:
//   0  success
//   1  negative answer: set does not certify, or a table row mismatches
//   2  usage, parse, unknown gate or other input error
//   3  gate file is not unitary

#include <iosfwd>
#include <string>
#include <vector>

namespace qslkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonUnitary = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qslkit
