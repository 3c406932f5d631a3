#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toro/model.hpp"

namespace toro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidInput = 3;
inline constexpr int kExitSolverFailure = 4;

/// Runs the command line `args` (without the program name). Human output
/// goes to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// SVG drawing of an instance and, optionally, a plan's end-effector path.
std::string render_svg(const Instance& inst, const Plan* plan);

}  // namespace toro::cli
