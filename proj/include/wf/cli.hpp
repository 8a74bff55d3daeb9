#pragma once

#include <ostream>

namespace wf {

inline constexpr int kExitWitness = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotWitness = 10;

/// Entry point for the wf tool; writes one JSON report to `out` and
/// diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wf
