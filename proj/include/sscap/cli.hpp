#pragma once

// Command-line front end. `run` parses argv and writes to the given streams;
// the `sscap` executable is a thin wrapper around it.
//
// Exit codes: 0 success, 1 check or root failure, 2 usage error.

#include <ostream>
#include <string>

namespace sscap::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// 12 significant digits, '.' separator, independent of the C++ locale.
std::string format_number(double x);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sscap::cli
