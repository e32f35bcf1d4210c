#pragma once

#include <iosfwd>

namespace sumnet {

// Exit codes: 0 success or pass, 1 verification failure or infeasible
// system, 2 input or usage error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sumnet
