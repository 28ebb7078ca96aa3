#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace affeq::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kUsage = 2 };

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct DescendOptions {
  int dim_high = 2;
  int dim_low = 1;
  int steps = 100;
  double step_size = 0.01;
  unsigned long long seed = 42;
  std::string method = "rk4";
};

/// Integrates a random descending field pair and prints both trajectories;
/// returns the exit code (0 iff max deviation <= 1e-8).
int demo_descend(const DescendOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace affeq::cli
