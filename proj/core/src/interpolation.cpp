#include "affeq/interpolation.hpp"

#include <algorithm>
#include <cmath>

namespace affeq::interpolation {

ControlPoints ControlPoints::make(std::vector<Vec> points) {
  if (points.size() < 2) throw ContractViolation("ControlPoints: need at least two points");
  const auto d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw ContractViolation("ControlPoints: points of different dimension");
  return {static_cast<int>(d), std::move(points)};
}

Curve lagrange_curve(const ControlPoints& P) {
  const int n = P.size();
  if (n < 2) throw ContractViolation("lagrange_curve: need at least two points");
  // Barycentric weights for equispaced nodes: (-1)^i binom(n-1, i).
  std::vector<double> w(n), nodes(n);
  double binom = 1.0;
  for (int i = 0; i < n; ++i) {
    w[i] = (i % 2 == 0 ? 1.0 : -1.0) * binom;
    binom = binom * (n - 1 - i) / (i + 1);
    nodes[i] = static_cast<double>(i) / (n - 1);
  }
  return {P.dim,
          [pts = P.points, w, nodes](double t) -> Vec {
            const auto n = pts.size();
            for (std::size_t i = 0; i < n; ++i)
              if (t == nodes[i]) return pts[i];
            Vec num = Vec::Zero(pts.front().size());
            double den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              const double c = w[i] / (t - nodes[i]);
              num += c * pts[i];
              den += c;
            }
            return num / den;
          },
          0.0, 1.0};
}

Curve bezier_curve(const ControlPoints& P) {
  if (P.size() < 2) throw ContractViolation("bezier_curve: need at least two points");
  return {P.dim,
          [pts = P.points](double t) -> Vec {
            std::vector<Vec> work = pts;
            for (std::size_t level = work.size() - 1; level > 0; --level)
              for (std::size_t i = 0; i < level; ++i)
                work[i] = (1.0 - t) * work[i] + t * work[i + 1];
            return work.front();
          },
          0.0, 1.0};
}

std::vector<double> clamped_uniform_knots(int count, int degree) {
  if (count < degree + 1) throw ContractViolation("clamped_uniform_knots: too few points");
  const int spans = count - degree;
  std::vector<double> knots;
  knots.reserve(count + degree + 1);
  for (int i = 0; i < degree; ++i) knots.push_back(0.0);
  for (int i = 0; i <= spans; ++i) knots.push_back(static_cast<double>(i) / spans);
  for (int i = 0; i < degree; ++i) knots.push_back(1.0);
  return knots;
}

namespace {

/// Index s with knots[s] <= t < knots[s+1], clamped to the last non-empty span.
int find_span(const std::vector<double>& knots, int degree, double t) {
  const int count = static_cast<int>(knots.size()) - degree - 1;
  if (t >= knots[count]) return count - 1;
  if (t <= knots[degree]) return degree;
  const auto it = std::upper_bound(knots.begin() + degree, knots.begin() + count + 1, t);
  return static_cast<int>(it - knots.begin()) - 1;
}

}  // namespace

std::vector<double> bspline_basis(const std::vector<double>& knots, int degree, double t) {
  const int count = static_cast<int>(knots.size()) - degree - 1;
  const int span = find_span(knots, degree, t);
  std::vector<double> local(degree + 1, 0.0), left(degree + 1), right(degree + 1);
  local[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    left[j] = t - knots[span + 1 - j];
    right[j] = knots[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = local[r] / (right[r + 1] + left[j - r]);
      local[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    local[j] = saved;
  }
  std::vector<double> out(count, 0.0);
  for (int j = 0; j <= degree; ++j) out[span - degree + j] = local[j];
  return out;
}

Curve bspline_curve(const ControlPoints& P) {
  if (P.size() < kSplineDegree + 1)
    throw ContractViolation("bspline_curve: cubic B-spline needs at least 4 points");
  return {P.dim,
          [pts = P.points, knots = clamped_uniform_knots(P.size())](double t) -> Vec {
            // de Boor's algorithm on the active span.
            const int p = kSplineDegree;
            const int span = find_span(knots, p, t);
            std::vector<Vec> d(p + 1);
            for (int j = 0; j <= p; ++j) d[j] = pts[span - p + j];
            for (int r = 1; r <= p; ++r)
              for (int j = p; j >= r; --j) {
                const int i = span - p + j;
                const double alpha = (t - knots[i]) / (knots[i + p + 1 - r] - knots[i]);
                d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
              }
            return d[p];
          },
          0.0, 1.0};
}

std::vector<double> bernstein_weights(int degree, double t) {
  std::vector<double> b(degree + 1, 0.0);
  b[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    for (int i = j; i > 0; --i) b[i] = (1.0 - t) * b[i] + t * b[i - 1];
    b[0] *= (1.0 - t);
  }
  return b;
}

ControlPoints points_action(const AffineMap& a, const ControlPoints& P) {
  if (a.domain_dim() != P.dim)
    throw ContractViolation("points_action: map domain " + std::to_string(a.domain_dim()) +
                            " vs point dimension " + std::to_string(P.dim));
  std::vector<Vec> moved;
  moved.reserve(P.points.size());
  for (const auto& p : P.points) moved.push_back(a(p));
  return {a.codomain_dim(), std::move(moved)};
}

Curve curve_action(const AffineMap& a, const Curve& c) {
  if (a.domain_dim() != c.dim)
    throw ContractViolation("curve_action: map domain " + std::to_string(a.domain_dim()) +
                            " vs curve dimension " + std::to_string(c.dim));
  return {a.codomain_dim(), [a, c](double t) -> Vec { return a(c(t)); }, c.t_begin, c.t_end};
}

std::vector<double> parameter_grid(const Curve& c, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = count == 1 ? c.t_begin
                        : c.t_begin + (c.t_end - c.t_begin) * static_cast<double>(i) / (count - 1);
  return out;
}

double curve_distance(const Curve& c1, const Curve& c2, int count) {
  if (c1.dim != c2.dim) throw ContractViolation("curve_distance: curves of different dimension");
  double worst = 0.0;
  for (double t : parameter_grid(c1, count))
    worst = std::max(worst, (c1(t) - c2(t)).lpNorm<Eigen::Infinity>());
  return worst;
}

ControlPoints random_points(int dim, int count, RngStream& rng) {
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(rng.uniform_vector(dim, -2.0, 2.0));
  return ControlPoints::make(std::move(pts));
}

std::vector<Scheme> shipped_schemes() {
  return {{"lagrange", lagrange_curve, 2}, {"bezier", bezier_curve, 2},
          {"bspline", bspline_curve, kSplineDegree + 1}};
}

AlgorithmFamily<ControlPoints, Curve> family(const Scheme& scheme) {
  AlgorithmFamily<ControlPoints, Curve> alg;
  alg.name = scheme.name;
  alg.evaluate = [build = scheme.build](int dim, const ControlPoints& P) {
    if (P.dim != dim) throw ContractViolation("interpolation family: point dimension mismatch");
    return build(P);
  };
  return alg;
}

ActionPair<ControlPoints, Curve> actions(int min_points, int max_points) {
  if (min_points < 2 || max_points < min_points)
    throw ContractViolation("interpolation actions: invalid point-count range");
  ActionPair<ControlPoints, Curve> p;
  p.sample_datum = [min_points, max_points](int dim, RngStream& rng) {
    return random_points(dim, rng.uniform_int(min_points, max_points), rng);
  };
  p.data_pushforward = points_action;
  p.data_membership = [](const AffineMap& a, const ControlPoints& lo, const ControlPoints& hi) {
    if (lo.size() != hi.size()) return kNonFiniteResidual;
    double worst = 0.0;
    for (int i = 0; i < lo.size(); ++i)
      worst = std::max(worst, (hi.points[i] - a(lo.points[i])).lpNorm<Eigen::Infinity>());
    return worst;
  };
  p.comp_residual = [](const AffineMap& a, const Curve& c1, const Curve& c2) {
    return curve_distance(c2, curve_action(a, c1));
  };
  p.comp_pushforward = curve_action;
  p.comp_distance = [](const Curve& c1, const Curve& c2) { return curve_distance(c1, c2); };
  return p;
}

}  // namespace affeq::interpolation
