#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "affeq/affine.hpp"

namespace affeq {

struct Violation {
  std::uint64_t trial_index = 0;
  double residual = 0.0;
  MapClass map_class = MapClass::bijective;
  std::string witness_summary;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of one seeded suite run. Serialized with exactly the fields
/// {suite, seed, trials, tolerance, max_residual, violations}.
struct EquivarianceReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::vector<Violation> violations;
  /// Trials whose related pair could not be generated or failed the
  /// membership re-check. Kept in memory only.
  std::uint64_t generation_errors = 0;

  bool passed() const noexcept { return violations.empty() && generation_errors == 0; }

  /// Folds one trial into the aggregate. Non-finite residuals are recorded
  /// as kNonFiniteResidual so the document stays valid JSON.
  void record(std::uint64_t trial_index, double residual, MapClass map_class,
              const std::string& witness);
};

inline constexpr double kNonFiniteResidual = 1e300;

/// One-line JSON document; byte-stable for equal reports.
std::string to_json(const EquivarianceReport& report);
EquivarianceReport report_from_json(std::string_view text);

}  // namespace affeq
