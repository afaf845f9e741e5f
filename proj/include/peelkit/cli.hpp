#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace peelkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitRefuted = 2;

/// Runs the peelkit command line. args excludes the program name.
/// Returns 0 on success, 1 on invalid input, 2 when a checked property is refuted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace peelkit
