#pragma once
// Command-line front end: spectrum, quotient, limit, verify and counts.
//
// Exit codes: 0 pass, 1 check failure, 2 invalid input, 3 resource budget.
#include <iosfwd>
#include <string>
#include <vector>

namespace walklab::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInvalidInput = 2, kResource = 3 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace walklab::cli
