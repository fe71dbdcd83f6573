#pragma once

#include <iosfwd>

namespace wordperc {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // a run finished but an invariant check failed
inline constexpr int kExitUsage = 2;        // bad flag or value; nothing was computed

// Parses argv, runs the selected subcommand and writes CSV to `out` (or to
// files under --out-dir), diagnostics to `err`.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wordperc
