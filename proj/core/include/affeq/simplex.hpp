#pragma once

#include <functional>
#include <string>
#include <vector>

#include "affeq/affine.hpp"
#include "affeq/harness.hpp"

namespace affeq::simplex {

struct Objective {
  int dim = 0;
  std::function<double(const Vec&)> eval;

  double operator()(const Vec& x) const { return eval(x); }
};

/// Ordered list of n >= 2 points in R^dim; n need not be dim + 1.
struct PointSet {
  int dim = 0;
  std::vector<Vec> points;

  static PointSet make(std::vector<Vec> points);
  int size() const noexcept { return static_cast<int>(points.size()); }
};

struct NMParams {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;

  /// Throws std::invalid_argument outside alpha > 0, gamma > 1,
  /// 0 < rho < 1, 0 < sigma < 1.
  void validate() const;
};

/// Permutation sorting X by (phi value, index), stable.
std::vector<int> canonical_order(const Objective& phi, const PointSet& X);

/// One Nelder-Mead step on n points: centroid of the best n-1, then
/// reflect / expand / contract / shrink. Expansion is accepted only when
/// strictly better than the reflected point. The output is in canonical order.
PointSet nm_step(const Objective& phi, const PointSet& X, const NMParams& params = {});

/// N-fold composition of nm_step; N = 0 returns X unchanged.
PointSet nm_iterate(const Objective& phi, const PointSet& X, const NMParams& params, int N);

struct SimplexDatum {
  Objective objective;
  PointSet points;
};

/// The related pair for a in Hom(m, n): low side (phi_hi o a, X_lo) on R^m,
/// high side (phi_hi, a . X_lo) on R^n. Functions pull back, points push
/// forward.
RelatedPair<SimplexDatum> simplex_data_action(const AffineMap& a, const Objective& phi_hi,
                                              const PointSet& X_lo);

/// max_i |X2'_i - a(X1'_i)|; both sets are expected in canonical order.
double comp_residual_simplex(const AffineMap& a, const PointSet& X1, const PointSet& X2);

/// Strictly convex quadratic plus a small sinusoidal perturbation.
Objective random_objective(int dim, RngStream& rng);
PointSet random_points(int dim, int count, RngStream& rng);

/// True when two points of X have values closer than rel_gap (relative).
bool has_value_ties(const Objective& phi, const PointSet& X, double rel_gap = 1e-9);

/// `iterations` steps of the canonical variant; named "nelder-mead" for one
/// step and "nelder-mead-<N>" otherwise.
AlgorithmFamily<SimplexDatum, PointSet> family(int iterations = 1, NMParams params = {});

/// Related-pair generator for arbitrary a (redrawing data with value ties),
/// pushforward for invertible a, and the point-set Comp residual. Sampled
/// data carry point_count(dim) points; the default is dim + 1.
ActionPair<SimplexDatum, PointSet> actions(std::function<int(int)> point_count = {});

}  // namespace affeq::simplex
