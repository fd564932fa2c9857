#pragma once

// Command-line front end. Exit codes: 0 every check passed, 1 a check
// failed, 2 inconclusive (a cap was reached), 3 usage or parse error.

#include <ostream>
#include <string>
#include <vector>

namespace fpcheck::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_inconclusive = 2;
inline constexpr int exit_usage = 3;

// args excludes the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace fpcheck::cli
