#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace antilinear::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;    // verification failed / no witness found
inline constexpr int kExitInvalid = 2;   // invalid request (bound, dimension, flags)
inline constexpr int kExitIo = 3;        // I/O or parse error

/// Largest dimension accepted without --force.
inline constexpr int kMaxDimWithoutForce = 64;

/// Environment variable consulted for the RNG seed when --seed is absent.
inline constexpr const char* kSeedEnv = "ANTILINEAR_SEED";

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace antilinear::cli
