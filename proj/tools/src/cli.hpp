#pragma once

#include <ostream>

namespace msx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidInput = 2;

/// Parses argv and runs one subcommand. Artifacts go to `out` unless --out
/// names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace msx::cli
