#pragma once

// Relation harness: checks that a dimension-indexed algorithm family maps
// Data(a)-related pairs to Comp(a)-related pairs. Relations are never
// materialized; they are represented by samplers, membership residuals and
// (when the relation is a graph) pushforward functions.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "affeq/affine.hpp"
#include "affeq/report.hpp"
#include "affeq/rng.hpp"

namespace affeq {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kDefaultTrials = 200;
inline constexpr int kDefaultGridSize = 50;
/// Counterexamples must exceed the suite tolerance by this factor.
inline constexpr double kCounterexampleFactor = 100.0;

template <class Datum>
struct RelatedPair {
  int dim_m = 0;
  int dim_n = 0;
  Datum datum_lo;
  Datum datum_hi;
  AffineMap via;
};

/// Alg_d for every supported dimension d.
template <class Datum, class Computation>
struct AlgorithmFamily {
  std::string name;
  std::function<Computation(int dim, const Datum&)> evaluate;
  std::function<bool(int dim)> supports_dim = [](int d) { return d >= 1; };
};

/// Data(a) and Comp(a) for one algorithm family.
template <class Datum, class Computation>
struct ActionPair {
  /// Draws a generic datum in dimension d.
  std::function<Datum(int dim, RngStream&)> sample_datum;
  /// Present when Data(a) is a graph (always required for bijective checks).
  std::function<Datum(const AffineMap&, const Datum&)> data_pushforward;
  /// Produces an element of Data(a). Defaults to sample + pushforward.
  std::function<RelatedPair<Datum>(const AffineMap&, RngStream&)> data_pair_generator;
  /// Zero iff (lo, hi) is in Data(a), up to sampling.
  std::function<double(const AffineMap&, const Datum&, const Datum&)> data_membership;
  double membership_tolerance = 1e-10;
  /// Zero iff (c1, c2) is in Comp(a), up to sampling.
  std::function<double(const AffineMap&, const Computation&, const Computation&)> comp_residual;
  /// Present when Comp(a) is a graph.
  std::function<Computation(const AffineMap&, const Computation&)> comp_pushforward;
  /// Distance between two computations in the same dimension.
  std::function<double(const Computation&, const Computation&)> comp_distance;
};

using MapSampler = std::function<AffineMap(RngStream&)>;

struct RunOptions {
  std::string suite;
  int trials = kDefaultTrials;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 42;
};

template <class Datum>
struct Witness {
  RelatedPair<Datum> pair;
  double residual = 0.0;
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
};

inline MapSampler fixed_map(AffineMap a) {
  return [a = std::move(a)](RngStream&) { return a; };
}

inline MapSampler class_sampler(MapClass c, int m, int n) {
  return [=](RngStream& rng) { return random_map_of_class(c, m, n, rng); };
}

namespace detail {

template <class Datum, class Computation>
RelatedPair<Datum> generate_pair(const ActionPair<Datum, Computation>& actions,
                                 const AffineMap& a, RngStream& rng) {
  if (actions.data_pair_generator) return actions.data_pair_generator(a, rng);
  if (!actions.data_pushforward || !actions.sample_datum)
    throw ContractViolation("action pair has neither a pair generator nor a pushforward");
  Datum lo = actions.sample_datum(a.domain_dim(), rng);
  Datum hi = actions.data_pushforward(a, lo);
  return {a.domain_dim(), a.codomain_dim(), std::move(lo), std::move(hi), a};
}

inline void require_dim(bool ok, const std::string& name, int d) {
  if (!ok)
    throw ContractViolation("algorithm '" + name + "' does not support dimension " +
                            std::to_string(d));
}

/// Runs one weak-naturality trial; nullopt signals a generation error.
template <class Datum, class Computation>
std::optional<std::pair<double, RelatedPair<Datum>>> weak_trial(
    const AlgorithmFamily<Datum, Computation>& alg,
    const ActionPair<Datum, Computation>& actions, const MapSampler& sampler, RngStream& rng) {
  const AffineMap a = sampler(rng);
  std::optional<RelatedPair<Datum>> pair;
  try {
    pair = generate_pair(actions, a, rng);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (actions.data_membership &&
      !(actions.data_membership(a, pair->datum_lo, pair->datum_hi) <=
        actions.membership_tolerance))
    return std::nullopt;
  const Computation c1 = alg.evaluate(a.domain_dim(), pair->datum_lo);
  const Computation c2 = alg.evaluate(a.codomain_dim(), pair->datum_hi);
  const double r = actions.comp_residual(a, c1, c2);
  return std::make_pair(r, std::move(*pair));
}

}  // namespace detail

/// Bijective equivariance in dimension d: Alg(Data(a) d) against the
/// Comp(a)-image of Alg(d), with a drawn from the mixed invertible families
/// unless a sampler is given.
template <class Datum, class Computation>
EquivarianceReport check_bijective(const AlgorithmFamily<Datum, Computation>& alg,
                                   const ActionPair<Datum, Computation>& actions, int d,
                                   const RunOptions& opts, MapSampler sampler = {}) {
  detail::require_dim(alg.supports_dim(d), alg.name, d);
  if (!actions.data_pushforward)
    throw ContractViolation("check_bijective requires a data pushforward");
  if (!sampler) sampler = [d](RngStream& rng) { return random_invertible_mixed(d, rng); };

  EquivarianceReport report{opts.suite, opts.seed, static_cast<std::uint64_t>(opts.trials),
                            opts.tolerance, 0.0, {}, 0};
  for (int i = 0; i < opts.trials; ++i) {
    RngStream rng(opts.seed, static_cast<std::uint64_t>(i));
    const AffineMap a = sampler(rng);
    if (a.domain_dim() != d || a.codomain_dim() != d)
      throw ContractViolation("check_bijective: sampler produced a map of the wrong shape");
    const Datum d1 = actions.sample_datum(d, rng);
    const Datum d2 = actions.data_pushforward(a, d1);
    const double r = actions.comp_residual(a, alg.evaluate(d, d1), alg.evaluate(d, d2));
    report.record(static_cast<std::uint64_t>(i), r, MapClass::bijective, describe(a));
  }
  return report;
}

/// Tests Alg_N o Data(a) within Comp(a) o Alg_M at sampled related pairs.
/// Only this orientation is tested; the converse inclusion is never checked.
template <class Datum, class Computation>
EquivarianceReport check_weak_naturality(const AlgorithmFamily<Datum, Computation>& alg,
                                         const ActionPair<Datum, Computation>& actions,
                                         const MapSampler& sampler, const RunOptions& opts) {
  EquivarianceReport report{opts.suite, opts.seed, static_cast<std::uint64_t>(opts.trials),
                            opts.tolerance, 0.0, {}, 0};
  for (int i = 0; i < opts.trials; ++i) {
    RngStream rng(opts.seed, static_cast<std::uint64_t>(i));
    auto outcome = detail::weak_trial(alg, actions, sampler, rng);
    if (!outcome) {
      ++report.generation_errors;
      continue;
    }
    const auto& via = outcome->second.via;
    report.record(static_cast<std::uint64_t>(i), outcome->first, classify(via), describe(via));
  }
  return report;
}

template <class Datum, class Computation>
EquivarianceReport check_weak_naturality(const AlgorithmFamily<Datum, Computation>& alg,
                                         const ActionPair<Datum, Computation>& actions,
                                         const AffineMap& a, const RunOptions& opts) {
  detail::require_dim(alg.supports_dim(a.domain_dim()), alg.name, a.domain_dim());
  detail::require_dim(alg.supports_dim(a.codomain_dim()), alg.name, a.codomain_dim());
  return check_weak_naturality(alg, actions, fixed_map(a), opts);
}

/// Equality of Alg_N o Data(a) and Comp(a) o Alg_M when both relations are
/// graphs. Residual is the larger of the direct distance between the two
/// composites and the Comp(a) membership residual of (Alg_M d, Alg_N Data(a) d).
template <class Datum, class Computation>
EquivarianceReport check_exact_naturality(const AlgorithmFamily<Datum, Computation>& alg,
                                          const ActionPair<Datum, Computation>& actions,
                                          const MapSampler& sampler, const RunOptions& opts) {
  if (!actions.data_pushforward || !actions.comp_pushforward || !actions.comp_distance)
    throw ContractViolation("check_exact_naturality requires graph actions on both sides");
  EquivarianceReport report{opts.suite, opts.seed, static_cast<std::uint64_t>(opts.trials),
                            opts.tolerance, 0.0, {}, 0};
  for (int i = 0; i < opts.trials; ++i) {
    RngStream rng(opts.seed, static_cast<std::uint64_t>(i));
    const AffineMap a = sampler(rng);
    const int m = a.domain_dim();
    const int n = a.codomain_dim();
    detail::require_dim(alg.supports_dim(m), alg.name, m);
    detail::require_dim(alg.supports_dim(n), alg.name, n);
    const Datum d = actions.sample_datum(m, rng);
    const Computation low = alg.evaluate(m, d);
    const Computation moved_then_run = alg.evaluate(n, actions.data_pushforward(a, d));
    const Computation run_then_moved = actions.comp_pushforward(a, low);
    const double r = std::max(actions.comp_distance(moved_then_run, run_then_moved),
                              actions.comp_residual(a, low, moved_then_run));
    report.record(static_cast<std::uint64_t>(i), r, classify(a), describe(a));
  }
  return report;
}

template <class Datum, class Computation>
EquivarianceReport check_exact_naturality(const AlgorithmFamily<Datum, Computation>& alg,
                                          const ActionPair<Datum, Computation>& actions,
                                          const AffineMap& a, const RunOptions& opts) {
  return check_exact_naturality(alg, actions, fixed_map(a), opts);
}

/// Randomized search for a Data(a)-related pair whose images are not
/// Comp(a)-related. Returns the first trial whose residual exceeds
/// kCounterexampleFactor * tolerance.
template <class Datum, class Computation>
std::optional<Witness<Datum>> search_counterexample(
    const AlgorithmFamily<Datum, Computation>& alg, const ActionPair<Datum, Computation>& actions,
    const MapSampler& sampler, int budget, std::uint64_t seed, double tolerance) {
  if (budget < 1) throw ContractViolation("search_counterexample: budget must be >= 1");
  const double threshold = kCounterexampleFactor * tolerance;
  for (int i = 0; i < budget; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    auto outcome = detail::weak_trial(alg, actions, sampler, rng);
    if (!outcome) continue;
    if (!(outcome->first <= threshold))
      return Witness<Datum>{std::move(outcome->second), outcome->first,
                            static_cast<std::uint64_t>(i), seed};
  }
  return std::nullopt;
}

template <class Datum, class Computation>
std::optional<Witness<Datum>> search_counterexample(
    const AlgorithmFamily<Datum, Computation>& alg, const ActionPair<Datum, Computation>& actions,
    MapClass map_class, int m, int n, int budget, std::uint64_t seed, double tolerance) {
  return search_counterexample(alg, actions, class_sampler(map_class, m, n), budget, seed,
                               tolerance);
}

/// Re-runs trial `trial_index` of a seeded weak-naturality run; used to replay
/// pinned witnesses.
template <class Datum, class Computation>
std::optional<Witness<Datum>> replay_trial(const AlgorithmFamily<Datum, Computation>& alg,
                                           const ActionPair<Datum, Computation>& actions,
                                           const MapSampler& sampler, std::uint64_t seed,
                                           std::uint64_t trial_index) {
  RngStream rng(seed, trial_index);
  auto outcome = detail::weak_trial(alg, actions, sampler, rng);
  if (!outcome) return std::nullopt;
  return Witness<Datum>{std::move(outcome->second), outcome->first, trial_index, seed};
}

}  // namespace affeq
