#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nbc::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kPass = 0,
  kIoError = 1,     // unreadable or malformed input, unwritable output
  kUsageError = 2,  // bad flags or a guard refusal
  kViolation = 3,   // a property suite found a counterexample
};

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nbc::cli
