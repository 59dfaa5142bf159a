#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace indfree {

/// Exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // a negative mathematical verdict
  kExitInvalid = 2,   // bad parameters or constructor failures
  kExitInput = 3,     // unreadable or malformed input
};

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes);

/// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace indfree
