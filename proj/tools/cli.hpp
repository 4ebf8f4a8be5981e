#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cohsys::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomain = 2;
inline constexpr int kConsistency = 3;

/// Runs one command line (without the program name). Primary output goes to
/// `out` only when the command succeeds; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohsys::cli
