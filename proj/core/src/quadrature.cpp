#include "affeq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace affeq::quadrature {

QuadDatum QuadDatum::make(double from, double to, Integrand f, int orientation) {
  if (!(from != to)) throw std::invalid_argument("QuadDatum: degenerate interval");
  if (orientation != 1 && orientation != -1)
    throw std::invalid_argument("QuadDatum: orientation must be +1 or -1");
  if (from > to) return {to, from, std::move(f), -orientation};
  return {from, to, std::move(f), orientation};
}

QuadratureRule::QuadratureRule(std::string name, std::vector<double> nodes,
                               std::vector<double> weights, int exact_degree)
    : name_(std::move(name)),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      exact_degree_(exact_degree) {
  if (nodes_.empty() || nodes_.size() != weights_.size())
    throw std::invalid_argument("QuadratureRule '" + name_ + "': node/weight count mismatch");
  for (double t : nodes_)
    if (!(t >= 0.0 && t <= 1.0))
      throw std::invalid_argument("QuadratureRule '" + name_ + "': node outside [0,1]");
  const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-14)
    throw std::invalid_argument("QuadratureRule '" + name_ + "': weights do not sum to 1");
}

QuadratureRule midpoint() { return {"midpoint", {0.5}, {1.0}, 1}; }

QuadratureRule trapezoid() { return {"trapezoid", {0.0, 1.0}, {0.5, 0.5}, 1}; }

QuadratureRule simpson() {
  return {"simpson", {0.0, 0.5, 1.0}, {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0}, 3};
}

QuadratureRule gauss_legendre(int k) {
  if (k < 1) throw std::invalid_argument("gauss_legendre: k must be positive");
  std::vector<double> nodes(k), weights(k);
  for (int i = 0; i < k; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Map from [-1, 1] to [0, 1].
    nodes[i] = 0.5 * (1.0 + x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return nodes[a] < nodes[b]; });
  std::vector<double> n2(k), w2(k);
  for (int i = 0; i < k; ++i) {
    n2[i] = nodes[order[i]];
    w2[i] = weights[order[i]];
  }
  return {"gauss" + std::to_string(k), std::move(n2), std::move(w2), 2 * k - 1};
}

std::vector<QuadratureRule> shipped_rules() {
  return {midpoint(), trapezoid(), simpson(), gauss_legendre(2), gauss_legendre(3),
          gauss_legendre(5)};
}

double integrate(const QuadratureRule& rule, const QuadDatum& d) {
  const double length = d.beta - d.alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes().size(); ++i)
    sum += rule.weights()[i] * d.integrand(d.alpha + length * rule.nodes()[i]);
  return d.orientation * length * sum;
}

namespace {

void require_scalar(const AffineMap& a, const char* where) {
  if (a.domain_dim() != 1 || a.codomain_dim() != 1)
    throw ContractViolation(std::string(where) + ": map must be in Hom(1,1)");
}

}  // namespace

QuadDatum quad_data_action(const AffineMap& a, const QuadDatum& d) {
  require_scalar(a, "quad_data_action");
  const AffineMap inv = invert(a);
  const double scale = inv.linear()(0, 0);
  const double shift = inv.translation()[0];
  Integrand pulled = [f = d.integrand, scale, shift](double y) { return f(scale * y + shift); };
  const double lo = a.linear()(0, 0) * d.alpha + a.translation()[0];
  const double hi = a.linear()(0, 0) * d.beta + a.translation()[0];
  return QuadDatum::make(lo, hi, std::move(pulled), d.orientation);
}

double quad_comp_action(const AffineMap& a, double v) {
  require_scalar(a, "quad_comp_action");
  return tangent(a)(0, 0) * v;
}

QuadDatum random_datum(RngStream& rng) {
  double lo = rng.uniform(-2.0, 2.0);
  double hi = rng.uniform(-2.0, 2.0);
  if (hi < lo) std::swap(lo, hi);
  if (hi - lo < 0.1) hi = lo + 0.1;
  Integrand f;
  if (rng.uniform() < 0.5) {
    const int degree = rng.uniform_int(0, 5);
    std::vector<double> c(degree + 1);
    for (auto& ci : c) ci = rng.uniform(-1.0, 1.0);
    f = [c](double x) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
  } else {
    const double amp = rng.uniform(0.5, 2.0);
    const double freq = rng.uniform(0.5, 3.0);
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double offset = rng.uniform(-1.0, 1.0);
    f = [=](double x) { return amp * std::sin(freq * x + phase) + offset; };
  }
  return {lo, hi, std::move(f), 1};
}

AffineMap random_scalar_map(RngStream& rng) {
  const double magnitude = std::pow(10.0, rng.uniform(-1.0, 1.0));
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  Mat A(1, 1);
  A(0, 0) = sign * magnitude;
  return AffineMap(std::move(A), rng.uniform_vector(1, -2.0, 2.0));
}

AlgorithmFamily<QuadDatum, double> family(const QuadratureRule& rule) {
  return {rule.name(), [rule](int, const QuadDatum& d) { return integrate(rule, d); },
          [](int d) { return d == 1; }};
}

ActionPair<QuadDatum, double> actions() {
  ActionPair<QuadDatum, double> p;
  p.sample_datum = [](int dim, RngStream& rng) {
    if (dim != 1) throw ContractViolation("quadrature data exist only in dimension 1");
    return random_datum(rng);
  };
  p.data_pushforward = quad_data_action;
  p.comp_residual = [](const AffineMap& a, const double& v1, const double& v2) {
    const double moved = quad_comp_action(a, v1);
    return std::abs(v2 - moved) / (1.0 + std::abs(moved));
  };
  p.comp_pushforward = [](const AffineMap& a, const double& v) { return quad_comp_action(a, v); };
  p.comp_distance = [](const double& x, const double& y) {
    return std::abs(x - y) / (1.0 + std::abs(y));
  };
  return p;
}

}  // namespace affeq::quadrature
