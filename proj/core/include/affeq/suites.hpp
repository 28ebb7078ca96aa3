#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affeq/affine.hpp"
#include "affeq/harness.hpp"
#include "affeq/report.hpp"

namespace affeq::suites {

using DimPair = std::pair<int, int>;

/// Step sizes every integrator suite runs with.
inline const std::vector<double> kStepSizes = {0.01, 0.1, 1.0};
/// Number of Nelder-Mead steps in the iterate suites.
inline constexpr int kIterateSteps = 10;

/// quadrature, integrators, interpolation, simplex.
const std::vector<std::string>& module_names();

std::vector<MapClass> supported_classes(const std::string& module);
std::vector<MapClass> default_classes(const std::string& module);
std::vector<DimPair> default_dims(const std::string& module, MapClass c);
/// Algorithm names registered for a module.
std::vector<std::string> algorithm_names(const std::string& module);

/// True when Hom(m, n) can contain a map of class c.
bool dims_fit_class(DimPair dims, MapClass c);

struct SuiteRequest {
  /// A module name or "all".
  std::string module = "all";
  /// Empty selects each module's defaults.
  std::vector<MapClass> classes;
  /// Empty selects per-class defaults; otherwise each pair runs under every
  /// requested class it fits.
  std::vector<DimPair> dims;
  int trials = kDefaultTrials;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 42;
  /// Empty runs every algorithm.
  std::vector<std::string> algorithms;
};

/// Throws ContractViolation for unknown modules or algorithms, classes a
/// named module does not support, and dims that fit none of the requested
/// classes.
void validate(const SuiteRequest& request);

/// One report per (module, algorithm, class, dims[, step size]), in a fixed
/// order. Suite names look like "integrators/rk4/injective/2:3/h=0.1".
std::vector<EquivarianceReport> run(const SuiteRequest& request);

struct WitnessRecord {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
  double residual = 0.0;
  MapClass map_class = MapClass::bijective;
  int dim_m = 0;
  int dim_n = 0;
  std::string map;
};

/// search_counterexample over one (module, algorithm, class, dims). For
/// integrators `step` selects h.
std::optional<WitnessRecord> search(const std::string& module, const std::string& algorithm,
                                    MapClass c, DimPair dims, int budget, std::uint64_t seed,
                                    double tolerance, double step = 0.1);

/// Recomputes the residual of a recorded witness from (seed, trial_index).
std::optional<WitnessRecord> replay(const std::string& module, const std::string& algorithm,
                                    MapClass c, DimPair dims, std::uint64_t seed,
                                    std::uint64_t trial_index, double step = 0.1);

std::string witness_to_json(const WitnessRecord& w);
WitnessRecord witness_from_json(const std::string& text);

}  // namespace affeq::suites
