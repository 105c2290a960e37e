#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rwpe::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // verification or well-formedness failure
inline constexpr int kUsage = 2;    // usage, parse or type error
inline constexpr int kEngine = 3;   // engine resource limit or runtime error

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace rwpe::cli
