#pragma once

namespace stakesim {

inline constexpr const char* kVersion = "0.1.0";

// Batch front door. Parses argv (subcommand + flags), dispatches to the
// library, writes CSV/JSON to the configured sink. Returns the process
// exit code: 0 success, 1 configuration error, 2 solver/convergence
// error, 3 I/O error.
int run_command(int argc, const char* const* argv);

}  // namespace stakesim
