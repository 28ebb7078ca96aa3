#pragma once

#include <functional>
#include <string>
#include <vector>

#include "affeq/affine.hpp"
#include "affeq/harness.hpp"

namespace affeq::interpolation {

struct ControlPoints {
  int dim = 0;
  std::vector<Vec> points;

  /// Throws ContractViolation when fewer than two points are given or their
  /// lengths disagree.
  static ControlPoints make(std::vector<Vec> points);
  int size() const noexcept { return static_cast<int>(points.size()); }
};

struct Curve {
  int dim = 0;
  std::function<Vec(double)> eval;
  double t_begin = 0.0;
  double t_end = 1.0;

  Vec operator()(double t) const { return eval(t); }
};

/// Degree n-1 interpolant through P_i at t_i = i/(n-1), barycentric form.
Curve lagrange_curve(const ControlPoints& P);
/// de Casteljau evaluation on [0, 1].
Curve bezier_curve(const ControlPoints& P);
/// Cubic B-spline with clamped uniform knots on [0, 1]; needs n >= 4.
Curve bspline_curve(const ControlPoints& P);

inline constexpr int kSplineDegree = 3;

/// Bernstein basis values B_{i,degree}(t), i = 0..degree.
std::vector<double> bernstein_weights(int degree, double t);
/// Clamped uniform knot vector for `count` control points.
std::vector<double> clamped_uniform_knots(int count, int degree = kSplineDegree);
/// All basis values N_{i,degree}(t), i = 0..count-1, via the Cox-de Boor
/// triangle on the non-zero span.
std::vector<double> bspline_basis(const std::vector<double>& knots, int degree, double t);

/// Diagonal action a . (P_1, ..., P_n).
ControlPoints points_action(const AffineMap& a, const ControlPoints& P);
/// Post-composition a o c.
Curve curve_action(const AffineMap& a, const Curve& c);

/// `count` equispaced parameters covering the curve's closed domain.
std::vector<double> parameter_grid(const Curve& c, int count = kDefaultGridSize);
/// max over the grid of |c1(t) - c2(t)|.
double curve_distance(const Curve& c1, const Curve& c2, int count = kDefaultGridSize);

ControlPoints random_points(int dim, int count, RngStream& rng);

using CurveBuilder = Curve (*)(const ControlPoints&);

struct Scheme {
  std::string name;
  CurveBuilder build;
  int min_points;
};

/// lagrange, bezier, bspline.
std::vector<Scheme> shipped_schemes();

AlgorithmFamily<ControlPoints, Curve> family(const Scheme& scheme);

/// Graph actions; each sampled datum carries a point count drawn uniformly
/// from [min_points, max_points].
ActionPair<ControlPoints, Curve> actions(int min_points = 2, int max_points = 8);

}  // namespace affeq::interpolation
