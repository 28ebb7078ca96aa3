#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>

#include <CLI11.hpp>

#include "affeq/integrators.hpp"
#include "affeq/suites.hpp"

namespace affeq::cli {

namespace {

suites::DimPair parse_dims(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
    throw ContractViolation("malformed dims '" + text + "' (expected m:n)");
  std::size_t used_m = 0, used_n = 0;
  int m = 0, n = 0;
  try {
    m = std::stoi(text.substr(0, colon), &used_m);
    n = std::stoi(text.substr(colon + 1), &used_n);
  } catch (const std::exception&) {
    throw ContractViolation("malformed dims '" + text + "' (expected m:n)");
  }
  if (used_m != colon || used_n != text.size() - colon - 1)
    throw ContractViolation("malformed dims '" + text + "' (expected m:n)");
  return {m, n};
}

std::vector<MapClass> parse_classes(const std::vector<std::string>& names) {
  std::vector<MapClass> out;
  for (const auto& s : names) {
    const auto c = map_class_from_string(s);
    if (!c) throw ContractViolation("unknown class '" + s + "'");
    out.push_back(*c);
  }
  return out;
}

struct CheckArgs {
  std::string suite = "all";
  std::vector<std::string> classes;
  std::vector<std::string> dims;
  int trials = kDefaultTrials;
  double tol = kDefaultTolerance;
  unsigned long long seed = 42;
  std::string out;
  std::vector<std::string> algorithms;
};

struct SearchArgs {
  std::string suite;
  std::string algorithm;
  std::string map_class;
  std::string dims;
  int budget = 500;
  unsigned long long seed = 42;
  double tol = kDefaultTolerance;
  double step = 0.1;
  std::string out;
};

struct DescendArgs {
  std::string dims = "2:1";
  DescendOptions opts;
};

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  suites::SuiteRequest req;
  req.module = args.suite;
  req.classes = parse_classes(args.classes);
  for (const auto& d : args.dims) req.dims.push_back(parse_dims(d));
  req.trials = args.trials;
  req.tolerance = args.tol;
  req.seed = args.seed;
  req.algorithms = args.algorithms;
  suites::validate(req);

  const auto reports = suites::run(req);
  std::string documents;
  for (const auto& r : reports) documents += to_json(r) + "\n";

  if (args.out.empty()) {
    out << documents;
  } else {
    std::ofstream file(args.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open output file '" << args.out << "'\n";
      return kUsage;
    }
    file << documents;
  }

  bool any_violation = false;
  for (const auto& r : reports) {
    any_violation = any_violation || !r.passed();
    char line[64];
    std::snprintf(line, sizeof line, "max_residual=%.3e", r.max_residual);
    auto& stream = args.out.empty() ? err : out;
    stream << (r.passed() ? "PASS " : "FAIL ") << r.suite << ' ' << line
           << " violations=" << r.violations.size();
    if (r.generation_errors) stream << " generation_errors=" << r.generation_errors;
    stream << '\n';
  }
  if (reports.empty()) err << "warning: the requested filters selected no suites\n";
  return any_violation ? kViolations : kOk;
}

int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err) {
  const auto c = map_class_from_string(args.map_class);
  if (!c) throw ContractViolation("unknown class '" + args.map_class + "'");
  if (args.budget < 1) throw ContractViolation("budget must be >= 1");
  const auto dims = parse_dims(args.dims);
  const auto witness =
      suites::search(args.suite, args.algorithm, *c, dims, args.budget, args.seed, args.tol, args.step);
  if (!witness) {
    out << "no counterexample within " << args.budget << " trials\n";
    return kOk;
  }
  const std::string doc = suites::witness_to_json(*witness) + "\n";
  if (args.out.empty()) {
    out << doc;
  } else {
    std::ofstream file(args.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open output file '" << args.out << "'\n";
      return kUsage;
    }
    file << doc;
    out << "counterexample " << witness->suite << " trial=" << witness->trial_index
        << " residual=" << witness->residual << '\n';
  }
  return kViolations;
}

}  // namespace

int demo_descend(const DescendOptions& opts, std::ostream& out, std::ostream& err) {
  using namespace integrators;
  if (!(opts.dim_high > opts.dim_low && opts.dim_low >= 1)) {
    err << "error: demo-descend needs dims m:n with m > n >= 1\n";
    return kUsage;
  }
  if (opts.steps < 0 || !(opts.step_size > 0.0)) {
    err << "error: steps must be >= 0 and h > 0\n";
    return kUsage;
  }
  std::optional<OneStepMethod> method;
  for (const auto& m : shipped_methods())
    if (m.name == opts.method) method = m;
  if (!method) {
    err << "error: unknown method '" << opts.method << "'\n";
    return kUsage;
  }

  RngStream rng(opts.seed, 0);
  const AffineMap a = random_map(MapKind::surjective, opts.dim_high, opts.dim_low, rng);
  const VectorField f_low = random_field(opts.dim_low, rng);
  const VectorField f_high = related_field_surjective(a, f_low, std::nullopt, rng);
  Vec x = rng.uniform_vector(opts.dim_high, -1.0, 1.0);
  Vec y = a(x);

  std::vector<Vec> projected{a(x)}, low{y};
  for (int k = 0; k < opts.steps; ++k) {
    x = method->step(f_high, x, opts.step_size);
    y = method->step(f_low, y, opts.step_size);
    projected.push_back(a(x));
    low.push_back(y);
  }

  double deviation = 0.0;
  for (std::size_t k = 0; k < low.size(); ++k)
    deviation = std::max(deviation, (projected[k] - low[k]).lpNorm<Eigen::Infinity>());

  char buf[64];
  auto table = [&](const char* title, const std::vector<Vec>& rows) {
    out << "# " << title << '\n' << "step t";
    for (int i = 0; i < opts.dim_low; ++i) out << " y" << i;
    out << '\n';
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%zu %.6f", k, static_cast<double>(k) * opts.step_size);
      out << buf;
      for (int i = 0; i < rows[k].size(); ++i) {
        std::snprintf(buf, sizeof buf, " %.17g", rows[k][i]);
        out << buf;
      }
      out << '\n';
    }
  };
  out << "# method=" << method->name << " Hom(" << opts.dim_high << "," << opts.dim_low
      << ") steps=" << opts.steps << " h=" << opts.step_size << " seed=" << opts.seed << '\n';
  table("projected high-dimensional trajectory", projected);
  out << '\n';
  table("low-dimensional trajectory", low);
  std::snprintf(buf, sizeof buf, "max_deviation=%.6e", deviation);
  out << buf << '\n';
  return deviation <= 1e-8 ? kOk : kViolations;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine equivariance conformance harness", "affeq"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run equivariance suites and write reports");
  check_cmd->add_option("--suite", check.suite, "quadrature|integrators|interpolation|simplex|all")
      ->capture_default_str();
  check_cmd->add_option("--classes", check.classes, "Comma-separated map classes")
      ->delimiter(',');
  check_cmd->add_option("--dims", check.dims, "Comma-separated m:n pairs")->delimiter(',');
  check_cmd->add_option("--trials", check.trials, "Trials per suite")->capture_default_str();
  check_cmd->add_option("--tol", check.tol, "Residual tolerance")->capture_default_str();
  check_cmd->add_option("--seed", check.seed, "Master seed")->capture_default_str();
  check_cmd->add_option("--out", check.out, "Report file (JSON lines); stdout when omitted");
  check_cmd->add_option("--algorithms", check.algorithms, "Comma-separated algorithm names")
      ->delimiter(',');

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Search for a weak-naturality counterexample");
  search_cmd->add_option("--suite", search.suite, "Module to search")->required();
  search_cmd->add_option("--algorithms", search.algorithm, "Algorithm name")->required();
  search_cmd->add_option("--classes", search.map_class, "Map class")->required();
  search_cmd->add_option("--dims", search.dims, "m:n")->required();
  search_cmd->add_option("--budget", search.budget, "Maximum trials")->capture_default_str();
  search_cmd->add_option("--seed", search.seed, "Master seed")->capture_default_str();
  search_cmd->add_option("--tol", search.tol, "Suite tolerance")->capture_default_str();
  search_cmd->add_option("--step-size", search.step, "Integrator step size")->capture_default_str();
  search_cmd->add_option("--out", search.out, "Witness file; stdout when omitted");

  DescendArgs descend;
  auto* descend_cmd =
      app.add_subcommand("demo-descend", "Integrate a descending field pair and compare flows");
  descend_cmd->add_option("--dims", descend.dims, "m:n with m > n")->capture_default_str();
  descend_cmd->add_option("--steps", descend.opts.steps, "Number of steps")->capture_default_str();
  descend_cmd->add_option("--step-size", descend.opts.step_size, "Step size")->capture_default_str();
  descend_cmd->add_option("--seed", descend.opts.seed, "Seed")->capture_default_str();
  descend_cmd->add_option("--method", descend.opts.method, "euler|heun|rk4|divmod")
      ->capture_default_str();

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check_cmd) return cmd_check(check, out, err);
    if (*search_cmd) return cmd_search(search, out, err);
    if (*descend_cmd) {
      const auto d = parse_dims(descend.dims);
      descend.opts.dim_high = d.first;
      descend.opts.dim_low = d.second;
      return demo_descend(descend.opts, out, err);
    }
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace affeq::cli
