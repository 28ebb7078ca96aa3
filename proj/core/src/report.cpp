#include "affeq/report.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace affeq {

void EquivarianceReport::record(std::uint64_t trial_index, double residual, MapClass map_class,
                                const std::string& witness) {
  if (!std::isfinite(residual)) residual = kNonFiniteResidual;
  if (residual > max_residual) max_residual = residual;
  if (residual > tolerance) violations.push_back({trial_index, residual, map_class, witness});
}

std::string to_json(const EquivarianceReport& report) {
  nlohmann::ordered_json doc;
  doc["suite"] = report.suite;
  doc["seed"] = report.seed;
  doc["trials"] = report.trials;
  doc["tolerance"] = report.tolerance;
  doc["max_residual"] = report.max_residual;
  auto violations = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json item;
    item["trial_index"] = v.trial_index;
    item["residual"] = v.residual;
    item["map_class"] = std::string(to_string(v.map_class));
    item["witness_summary"] = v.witness_summary;
    violations.push_back(std::move(item));
  }
  doc["violations"] = std::move(violations);
  return doc.dump();
}

EquivarianceReport report_from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  EquivarianceReport r;
  r.suite = doc.at("suite").get<std::string>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.trials = doc.at("trials").get<std::uint64_t>();
  r.tolerance = doc.at("tolerance").get<double>();
  r.max_residual = doc.at("max_residual").get<double>();
  for (const auto& item : doc.at("violations")) {
    Violation v;
    v.trial_index = item.at("trial_index").get<std::uint64_t>();
    v.residual = item.at("residual").get<double>();
    const auto cls = map_class_from_string(item.at("map_class").get<std::string>());
    if (!cls) throw std::invalid_argument("report_from_json: unknown map_class");
    v.map_class = *cls;
    v.witness_summary = item.at("witness_summary").get<std::string>();
    r.violations.push_back(std::move(v));
  }
  return r;
}

}  // namespace affeq
