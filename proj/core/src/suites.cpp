#include "affeq/suites.hpp"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "affeq/integrators.hpp"
#include "affeq/interpolation.hpp"
#include "affeq/quadrature.hpp"
#include "affeq/simplex.hpp"

namespace affeq::suites {

namespace {

constexpr auto kBij = MapClass::bijective;
constexpr auto kInj = MapClass::injective;
constexpr auto kSurj = MapClass::surjective;
constexpr auto kNeither = MapClass::neither;

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

bool contains(const std::vector<MapClass>& xs, MapClass x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

std::string dims_label(DimPair d) {
  return std::to_string(d.first) + ":" + std::to_string(d.second);
}

std::string step_label(double h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "h=%g", h);
  return buf;
}

std::string suite_name(const std::string& module, const std::string& alg, MapClass c, DimPair d,
                       const std::string& extra = {}) {
  std::string s = module + "/" + alg + "/" + std::string(to_string(c)) + "/" + dims_label(d);
  if (!extra.empty()) s += "/" + extra;
  return s;
}

bool selected(const SuiteRequest& req, const std::string& alg) {
  return req.algorithms.empty() || contains(req.algorithms, alg);
}

std::vector<MapClass> classes_for(const SuiteRequest& req, const std::string& module) {
  if (req.classes.empty()) return default_classes(module);
  std::vector<MapClass> out;
  for (auto c : req.classes)
    if (contains(supported_classes(module), c)) out.push_back(c);
  return out;
}

std::vector<DimPair> dims_for(const SuiteRequest& req, const std::string& module, MapClass c) {
  if (req.dims.empty()) return default_dims(module, c);
  std::vector<DimPair> out;
  for (auto d : req.dims) {
    if (!dims_fit_class(d, c)) continue;
    if (module == "quadrature" && d != DimPair{1, 1}) continue;
    out.push_back(d);
  }
  return out;
}

RunOptions options(const SuiteRequest& req, std::string name) {
  return {std::move(name), req.trials, req.tolerance, req.seed};
}

/// Runs one class for an algorithm family: bijective maps go through
/// check_bijective, everything else through the weak-naturality (or, for
/// graph functors, exact-naturality) check.
template <class D, class C>
EquivarianceReport run_class(const AlgorithmFamily<D, C>& alg, const ActionPair<D, C>& actions,
                             MapClass c, DimPair d, const RunOptions& opts, bool exact) {
  if (c == kBij) {
    if (exact) {
      const int dim = d.first;
      return check_exact_naturality(
          alg, actions, [dim](RngStream& rng) { return random_invertible_mixed(dim, rng); }, opts);
    }
    return check_bijective(alg, actions, d.first, opts);
  }
  const MapSampler sampler = class_sampler(c, d.first, d.second);
  if (exact) return check_exact_naturality(alg, actions, sampler, opts);
  return check_weak_naturality(alg, actions, sampler, opts);
}

void run_quadrature(const SuiteRequest& req, std::vector<EquivarianceReport>& out) {
  const auto actions = quadrature::actions();
  for (const auto& rule : quadrature::shipped_rules()) {
    if (!selected(req, rule.name())) continue;
    const auto alg = quadrature::family(rule);
    for (auto c : classes_for(req, "quadrature"))
      for (auto d : dims_for(req, "quadrature", c)) {
        const auto opts = options(req, suite_name("quadrature", rule.name(), c, d));
        out.push_back(check_bijective(alg, actions, 1, opts,
                                      [](RngStream& rng) { return quadrature::random_scalar_map(rng); }));
      }
  }
}

void run_integrators(const SuiteRequest& req, std::vector<EquivarianceReport>& out) {
  const auto actions = integrators::actions();
  for (const auto& method : integrators::shipped_methods()) {
    if (!selected(req, method.name)) continue;
    for (auto c : classes_for(req, "integrators"))
      for (auto d : dims_for(req, "integrators", c))
        for (double h : kStepSizes) {
          const auto alg = integrators::family(method, h);
          const auto opts =
              options(req, suite_name("integrators", method.name, c, d, step_label(h)));
          out.push_back(run_class(alg, actions, c, d, opts, false));
        }
  }
}

void run_interpolation(const SuiteRequest& req, std::vector<EquivarianceReport>& out) {
  for (const auto& scheme : interpolation::shipped_schemes()) {
    if (!selected(req, scheme.name)) continue;
    const auto alg = interpolation::family(scheme);
    const auto actions = interpolation::actions(scheme.min_points, 8);
    for (auto c : classes_for(req, "interpolation"))
      for (auto d : dims_for(req, "interpolation", c)) {
        const auto opts = options(req, suite_name("interpolation", scheme.name, c, d));
        out.push_back(run_class(alg, actions, c, d, opts, true));
      }
  }
}

void run_simplex(const SuiteRequest& req, std::vector<EquivarianceReport>& out) {
  const auto actions = simplex::actions();
  for (int steps : {1, kIterateSteps}) {
    const auto alg = simplex::family(steps);
    if (!selected(req, alg.name)) continue;
    for (auto c : classes_for(req, "simplex"))
      for (auto d : dims_for(req, "simplex", c)) {
        const auto opts = options(req, suite_name("simplex", alg.name, c, d));
        out.push_back(run_class(alg, actions, c, d, opts, false));
      }
  }
}

template <class D>
std::optional<WitnessRecord> to_record(const std::optional<Witness<D>>& w, const std::string& name,
                                       MapClass c, DimPair d) {
  if (!w) return std::nullopt;
  return WitnessRecord{name,     w->seed, w->trial_index, w->residual, c,
                       d.first, d.second, describe(w->pair.via)};
}

void require_module(const std::string& module) {
  if (!contains(module_names(), module))
    throw ContractViolation("unknown suite '" + module + "'");
}

}  // namespace

const std::vector<std::string>& module_names() {
  static const std::vector<std::string> names = {"quadrature", "integrators", "interpolation",
                                                 "simplex"};
  return names;
}

std::vector<MapClass> supported_classes(const std::string& module) {
  if (module == "quadrature") return {kBij};
  if (module == "integrators") return {kBij, kInj, kSurj};
  if (module == "interpolation" || module == "simplex") return {kBij, kInj, kSurj, kNeither};
  require_module(module);
  return {};
}

std::vector<MapClass> default_classes(const std::string& module) {
  if (module == "interpolation") return {kBij, kInj, kSurj, kNeither};
  return supported_classes(module);
}

std::vector<DimPair> default_dims(const std::string& module, MapClass c) {
  if (module == "quadrature") return c == kBij ? std::vector<DimPair>{{1, 1}} : std::vector<DimPair>{};
  switch (c) {
    case MapClass::bijective: return {{1, 1}, {2, 2}, {3, 3}};
    case MapClass::injective: return {{1, 2}, {2, 3}, {2, 5}};
    case MapClass::surjective: return {{2, 1}, {3, 2}, {5, 2}};
    case MapClass::neither: return {{2, 2}, {3, 4}, {4, 3}};
  }
  return {};
}

std::vector<std::string> algorithm_names(const std::string& module) {
  std::vector<std::string> out;
  if (module == "quadrature")
    for (const auto& r : quadrature::shipped_rules()) out.push_back(r.name());
  else if (module == "integrators")
    for (const auto& m : integrators::shipped_methods()) out.push_back(m.name);
  else if (module == "interpolation")
    for (const auto& s : interpolation::shipped_schemes()) out.push_back(s.name);
  else if (module == "simplex")
    out = {"nelder-mead", "nelder-mead-" + std::to_string(kIterateSteps)};
  else
    require_module(module);
  return out;
}

bool dims_fit_class(DimPair d, MapClass c) {
  const auto [m, n] = d;
  if (m < 1 || n < 1) return false;
  switch (c) {
    case MapClass::bijective: return m == n;
    case MapClass::injective: return m < n;
    case MapClass::surjective: return m > n;
    case MapClass::neither: return true;
  }
  return false;
}

void validate(const SuiteRequest& req) {
  std::vector<std::string> modules;
  if (req.module == "all") {
    modules = module_names();
  } else {
    require_module(req.module);
    modules = {req.module};
    for (auto c : req.classes)
      if (!contains(supported_classes(req.module), c))
        throw ContractViolation("suite '" + req.module + "' does not support class '" +
                                std::string(to_string(c)) + "'");
  }
  if (req.trials < 1) throw ContractViolation("trials must be positive");
  if (!(req.tolerance > 0.0)) throw ContractViolation("tolerance must be positive");
  for (const auto& alg : req.algorithms) {
    bool known = false;
    for (const auto& m : modules) known = known || contains(algorithm_names(m), alg);
    if (!known) throw ContractViolation("unknown algorithm '" + alg + "'");
  }
  const auto classes = req.classes.empty()
                           ? std::vector<MapClass>{kBij, kInj, kSurj, kNeither}
                           : req.classes;
  for (auto d : req.dims) {
    if (d.first < 1 || d.second < 1 || d.first > 16 || d.second > 16)
      throw ContractViolation("dims " + dims_label(d) + " out of range [1, 16]");
    bool fits = false;
    for (auto c : classes) fits = fits || dims_fit_class(d, c);
    if (!fits)
      throw ContractViolation("dims " + dims_label(d) + " fit none of the requested classes");
    if (req.module == "quadrature" && d != DimPair{1, 1})
      throw ContractViolation("quadrature is defined only on Hom(1,1)");
  }
}

std::vector<EquivarianceReport> run(const SuiteRequest& req) {
  validate(req);
  std::vector<EquivarianceReport> out;
  const bool all = req.module == "all";
  if (all || req.module == "quadrature") run_quadrature(req, out);
  if (all || req.module == "integrators") run_integrators(req, out);
  if (all || req.module == "interpolation") run_interpolation(req, out);
  if (all || req.module == "simplex") run_simplex(req, out);
  return out;
}

std::optional<WitnessRecord> search(const std::string& module, const std::string& algorithm,
                                    MapClass c, DimPair d, int budget, std::uint64_t seed,
                                    double tolerance, double step) {
  require_module(module);
  if (!contains(algorithm_names(module), algorithm))
    throw ContractViolation("unknown algorithm '" + algorithm + "' for suite '" + module + "'");
  if (!dims_fit_class(d, c))
    throw ContractViolation("dims " + dims_label(d) + " do not fit class " +
                            std::string(to_string(c)));
  const MapSampler sampler =
      module == "quadrature"
          ? MapSampler([](RngStream& rng) { return quadrature::random_scalar_map(rng); })
          : class_sampler(c, d.first, d.second);
  if (module == "quadrature") {
    for (const auto& rule : quadrature::shipped_rules())
      if (rule.name() == algorithm)
        return to_record(search_counterexample(quadrature::family(rule), quadrature::actions(),
                                               sampler, budget, seed, tolerance),
                         suite_name(module, algorithm, c, d), c, d);
  }
  if (module == "integrators") {
    for (const auto& method : integrators::shipped_methods())
      if (method.name == algorithm)
        return to_record(search_counterexample(integrators::family(method, step),
                                               integrators::actions(), sampler, budget, seed,
                                               tolerance),
                         suite_name(module, algorithm, c, d, step_label(step)), c, d);
  }
  if (module == "interpolation") {
    for (const auto& scheme : interpolation::shipped_schemes())
      if (scheme.name == algorithm)
        return to_record(search_counterexample(interpolation::family(scheme),
                                               interpolation::actions(scheme.min_points, 8),
                                               sampler, budget, seed, tolerance),
                         suite_name(module, algorithm, c, d), c, d);
  }
  if (module == "simplex") {
    const int steps = algorithm == "nelder-mead" ? 1 : kIterateSteps;
    return to_record(search_counterexample(simplex::family(steps), simplex::actions(), sampler,
                                           budget, seed, tolerance),
                     suite_name(module, algorithm, c, d), c, d);
  }
  return std::nullopt;
}

std::optional<WitnessRecord> replay(const std::string& module, const std::string& algorithm,
                                    MapClass c, DimPair d, std::uint64_t seed,
                                    std::uint64_t trial_index, double step) {
  require_module(module);
  const MapSampler sampler = class_sampler(c, d.first, d.second);
  if (module == "integrators") {
    for (const auto& method : integrators::shipped_methods())
      if (method.name == algorithm)
        return to_record(replay_trial(integrators::family(method, step), integrators::actions(),
                                      sampler, seed, trial_index),
                         suite_name(module, algorithm, c, d, step_label(step)), c, d);
  }
  if (module == "interpolation") {
    for (const auto& scheme : interpolation::shipped_schemes())
      if (scheme.name == algorithm)
        return to_record(replay_trial(interpolation::family(scheme),
                                      interpolation::actions(scheme.min_points, 8), sampler, seed,
                                      trial_index),
                         suite_name(module, algorithm, c, d), c, d);
  }
  if (module == "simplex") {
    const int steps = algorithm == "nelder-mead" ? 1 : kIterateSteps;
    return to_record(replay_trial(simplex::family(steps), simplex::actions(), sampler, seed,
                                  trial_index),
                     suite_name(module, algorithm, c, d), c, d);
  }
  throw ContractViolation("replay: unsupported suite/algorithm '" + module + "/" + algorithm + "'");
}

std::string witness_to_json(const WitnessRecord& w) {
  nlohmann::ordered_json doc;
  doc["suite"] = w.suite;
  doc["seed"] = w.seed;
  doc["trial_index"] = w.trial_index;
  doc["residual"] = w.residual;
  doc["map_class"] = std::string(to_string(w.map_class));
  doc["dim_m"] = w.dim_m;
  doc["dim_n"] = w.dim_n;
  doc["map"] = w.map;
  return doc.dump(2);
}

WitnessRecord witness_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  WitnessRecord w;
  w.suite = doc.at("suite").get<std::string>();
  w.seed = doc.at("seed").get<std::uint64_t>();
  w.trial_index = doc.at("trial_index").get<std::uint64_t>();
  w.residual = doc.at("residual").get<double>();
  const auto c = map_class_from_string(doc.at("map_class").get<std::string>());
  if (!c) throw std::invalid_argument("witness_from_json: unknown map_class");
  w.map_class = *c;
  w.dim_m = doc.at("dim_m").get<int>();
  w.dim_n = doc.at("dim_n").get<int>();
  w.map = doc.at("map").get<std::string>();
  return w;
}

}  // namespace affeq::suites
