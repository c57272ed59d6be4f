#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dessin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitMismatch = 3;

/// Runs one command line (without the program name). Reports go to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dessin::cli
