#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dirichlet::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Exit-code contract of the command-line tool.
enum ExitCode : int { kSuccess = 0, kNumericFailure = 1, kUsageError = 2, kIoError = 3 };

/// Runs the tool with `args` (args[0] is the program name). Normal output
/// goes to `out`, usage messages and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a digest, rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace dirichlet::cli
