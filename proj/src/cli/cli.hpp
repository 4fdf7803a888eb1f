#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilbary::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitTolerance = 3;

/// Runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies NILBARY_NUM_THREADS if set. Returns false if it is not a positive
/// integer.
bool apply_thread_env();

}  // namespace nilbary::cli
