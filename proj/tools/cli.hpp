#ifndef SOLIDSUM_CLI_HPP
#define SOLIDSUM_CLI_HPP

#include <iosfwd>

namespace solidsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

/// Entry point of the solidsum command; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace solidsum::cli

#endif
