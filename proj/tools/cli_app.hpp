#pragma once

namespace esc::cli {

/// Parses and dispatches one esctool invocation.
/// Exit codes: 0 success, 1 user/input error, 2 internal invariant failure.
/// Diagnostics go to stderr; machine output to stdout or --out.
int run(int argc, const char* const* argv);

} // namespace esc::cli
