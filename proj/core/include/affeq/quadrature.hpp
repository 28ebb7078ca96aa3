#pragma once

#include <functional>
#include <string>
#include <vector>

#include "affeq/affine.hpp"
#include "affeq/harness.hpp"

namespace affeq::quadrature {

using Integrand = std::function<double(double)>;

/// (alpha, beta, f) with alpha < beta. `orientation` is -1 when the datum
/// stands for the reversed integral from beta to alpha; orientation-reversing
/// affine maps produce such data.
struct QuadDatum {
  double alpha = 0.0;
  double beta = 1.0;
  Integrand integrand;
  int orientation = 1;

  /// Normalizes the endpoint order, folding a swap into the orientation.
  static QuadDatum make(double from, double to, Integrand f, int orientation = 1);
};

/// A rule on the reference interval [0, 1].
class QuadratureRule {
 public:
  /// Throws std::invalid_argument unless nodes lie in [0, 1] and the weights
  /// sum to one within 1e-14.
  QuadratureRule(std::string name, std::vector<double> nodes, std::vector<double> weights,
                 int exact_degree);

  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Highest polynomial degree the rule integrates exactly.
  int exact_degree() const noexcept { return exact_degree_; }

 private:
  std::string name_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int exact_degree_;
};

QuadratureRule midpoint();
QuadratureRule trapezoid();
QuadratureRule simpson();
/// k-point Gauss-Legendre, nodes from Newton iteration on P_k.
QuadratureRule gauss_legendre(int k);

/// midpoint, trapezoid, simpson, gauss2, gauss3, gauss5.
std::vector<QuadratureRule> shipped_rules();

double integrate(const QuadratureRule& rule, const QuadDatum& d);

/// (a(alpha), a(beta), f o a^-1), reordered when tangent(a) < 0.
QuadDatum quad_data_action(const AffineMap& a, const QuadDatum& d);

/// tangent(a) * v.
double quad_comp_action(const AffineMap& a, double v);

/// Random polynomial (degree <= 5) or trigonometric integrand on a random
/// interval inside [-2, 2].
QuadDatum random_datum(RngStream& rng);

/// Invertible map in Hom(1,1) with |tangent| log-uniform in [0.1, 10] and
/// random sign.
AffineMap random_scalar_map(RngStream& rng);

AlgorithmFamily<QuadDatum, double> family(const QuadratureRule& rule);

/// Relative residual |v2 - T a v1| / (1 + |T a v1|).
ActionPair<QuadDatum, double> actions();

}  // namespace affeq::quadrature
