#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace affeq {

/// Per-trial random stream. The sequence of draws is a pure function of
/// (master_seed, trial_index); the conversion from raw 64-bit words to reals
/// is done here rather than through <random> distributions so that draws are
/// identical across standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t trial_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t trial_index() const noexcept { return trial_index_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  /// Standard normal (Box-Muller, no cached second variate).
  double normal();

  Eigen::VectorXd uniform_vector(int size, double lo, double hi);
  Eigen::MatrixXd uniform_matrix(int rows, int cols, double lo, double hi);
  Eigen::MatrixXd normal_matrix(int rows, int cols);

 private:
  std::uint64_t master_seed_;
  std::uint64_t trial_index_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace affeq
