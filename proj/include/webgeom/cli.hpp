#pragma once

#include <iosfwd>

namespace webgeom {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;     // bad arguments, invalid web, unmet precondition
inline constexpr int kExitNegative = 2;  // computation succeeded with a negative verdict
inline constexpr int kExitParse = 3;     // malformed web or relation file

// Entry point of the webgeom tool. Reports go to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace webgeom
