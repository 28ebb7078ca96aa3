#include "affeq/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace affeq::simplex {

PointSet PointSet::make(std::vector<Vec> points) {
  if (points.size() < 2) throw ContractViolation("PointSet: need at least two points");
  const auto d = points.front().size();
  for (const auto& p : points)
    if (p.size() != d) throw ContractViolation("PointSet: points of different dimension");
  return {static_cast<int>(d), std::move(points)};
}

void NMParams::validate() const {
  if (!(reflection > 0.0) || !(expansion > 1.0) || !(contraction > 0.0 && contraction < 1.0) ||
      !(shrink > 0.0 && shrink < 1.0))
    throw std::invalid_argument("NMParams: coefficients out of range");
}

std::vector<int> canonical_order(const Objective& phi, const PointSet& X) {
  std::vector<double> values(X.points.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = phi(X.points[i]);
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  return order;
}

namespace {

PointSet sorted_by(const PointSet& X, const std::vector<int>& order) {
  PointSet out{X.dim, {}};
  out.points.reserve(order.size());
  for (int i : order) out.points.push_back(X.points[i]);
  return out;
}

}  // namespace

PointSet nm_step(const Objective& phi, const PointSet& X, const NMParams& params) {
  if (phi.dim != X.dim)
    throw ContractViolation("nm_step: objective dimension " + std::to_string(phi.dim) +
                            " vs point dimension " + std::to_string(X.dim));
  if (X.size() < 2) throw ContractViolation("nm_step: need at least two points");
  params.validate();

  PointSet S = sorted_by(X, canonical_order(phi, X));
  const int n = S.size();
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = phi(S.points[i]);

  Vec centroid = Vec::Zero(S.dim);
  for (int i = 0; i < n - 1; ++i) centroid += S.points[i];
  centroid /= static_cast<double>(n - 1);

  const Vec& worst = S.points[n - 1];
  const double f_best = f[0];
  const double f_second = f[n - 2];
  const double f_worst = f[n - 1];

  const Vec reflected = centroid + params.reflection * (centroid - worst);
  const double f_reflected = phi(reflected);

  bool shrink = false;
  if (f_reflected < f_best) {
    const Vec expanded = centroid + params.expansion * (reflected - centroid);
    S.points[n - 1] = phi(expanded) < f_reflected ? expanded : reflected;
  } else if (f_reflected < f_second) {
    S.points[n - 1] = reflected;
  } else if (f_reflected < f_worst) {
    const Vec outside = centroid + params.contraction * (reflected - centroid);
    if (phi(outside) < f_reflected)
      S.points[n - 1] = outside;
    else
      shrink = true;
  } else {
    const Vec inside = centroid + params.contraction * (worst - centroid);
    if (phi(inside) < f_worst)
      S.points[n - 1] = inside;
    else
      shrink = true;
  }
  if (shrink) {
    const Vec best = S.points[0];
    for (int i = 1; i < n; ++i) S.points[i] = best + params.shrink * (S.points[i] - best);
  }
  return sorted_by(S, canonical_order(phi, S));
}

PointSet nm_iterate(const Objective& phi, const PointSet& X, const NMParams& params, int N) {
  if (N < 0) throw ContractViolation("nm_iterate: N must be non-negative");
  PointSet current = X;
  for (int i = 0; i < N; ++i) current = nm_step(phi, current, params);
  return current;
}

RelatedPair<SimplexDatum> simplex_data_action(const AffineMap& a, const Objective& phi_hi,
                                              const PointSet& X_lo) {
  if (phi_hi.dim != a.codomain_dim())
    throw ContractViolation("simplex_data_action: objective dimension " +
                            std::to_string(phi_hi.dim) + " vs codomain " +
                            std::to_string(a.codomain_dim()));
  if (X_lo.dim != a.domain_dim())
    throw ContractViolation("simplex_data_action: point dimension " + std::to_string(X_lo.dim) +
                            " vs domain " + std::to_string(a.domain_dim()));
  Objective pulled{a.domain_dim(), [phi_hi, a](const Vec& x) { return phi_hi(a(x)); }};
  PointSet pushed{a.codomain_dim(), {}};
  for (const auto& x : X_lo.points) pushed.points.push_back(a(x));
  return {a.domain_dim(), a.codomain_dim(), SimplexDatum{std::move(pulled), X_lo},
          SimplexDatum{phi_hi, std::move(pushed)}, a};
}

double comp_residual_simplex(const AffineMap& a, const PointSet& X1, const PointSet& X2) {
  if (X1.size() != X2.size())
    throw ContractViolation("comp_residual_simplex: point counts differ (" +
                            std::to_string(X1.size()) + " vs " + std::to_string(X2.size()) + ")");
  double worst = 0.0;
  for (int i = 0; i < X1.size(); ++i)
    worst = std::max(worst, (X2.points[i] - a(X1.points[i])).lpNorm<Eigen::Infinity>());
  return worst;
}

Objective random_objective(int dim, RngStream& rng) {
  const Mat B = rng.uniform_matrix(dim, dim, -1.0, 1.0);
  const Mat Q = B.transpose() * B + 0.5 * Mat::Identity(dim, dim);
  const Vec center = rng.uniform_vector(dim, -1.0, 1.0);
  const Vec w = rng.uniform_vector(dim, -1.0, 1.0);
  const double amp = rng.uniform(0.0, 0.2);
  const double phase = rng.uniform(0.0, 6.283185307179586);
  return {dim, [=](const Vec& x) {
            const Vec r = x - center;
            return r.dot(Q * r) + amp * std::sin(w.dot(x) + phase);
          }};
}

PointSet random_points(int dim, int count, RngStream& rng) {
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(rng.uniform_vector(dim, -2.0, 2.0));
  return PointSet::make(std::move(pts));
}

bool has_value_ties(const Objective& phi, const PointSet& X, double rel_gap) {
  std::vector<double> v;
  for (const auto& p : X.points) v.push_back(phi(p));
  std::sort(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] - v[i - 1] <= rel_gap * (1.0 + std::abs(v[i]))) return true;
  return false;
}

AlgorithmFamily<SimplexDatum, PointSet> family(int iterations, NMParams params) {
  params.validate();
  AlgorithmFamily<SimplexDatum, PointSet> alg;
  alg.name = iterations == 1 ? "nelder-mead" : "nelder-mead-" + std::to_string(iterations);
  alg.evaluate = [iterations, params](int dim, const SimplexDatum& d) {
    if (d.objective.dim != dim || d.points.dim != dim)
      throw ContractViolation("simplex family: datum dimension mismatch");
    return nm_iterate(d.objective, d.points, params, iterations);
  };
  return alg;
}

namespace {

constexpr int kMaxRedraws = 100;

}  // namespace

ActionPair<SimplexDatum, PointSet> actions(std::function<int(int)> point_count) {
  if (!point_count) point_count = [](int dim) { return dim + 1; };
  ActionPair<SimplexDatum, PointSet> p;
  p.sample_datum = [point_count](int dim, RngStream& rng) {
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      SimplexDatum d{random_objective(dim, rng), random_points(dim, point_count(dim), rng)};
      if (!has_value_ties(d.objective, d.points)) return d;
    }
    throw std::runtime_error("simplex sampler: could not draw tie-free data");
  };
  p.data_pushforward = [](const AffineMap& a, const SimplexDatum& d) {
    const AffineMap inv = invert(a);
    Objective moved{a.codomain_dim(),
                    [phi = d.objective, inv](const Vec& y) { return phi(inv(y)); }};
    PointSet pts{a.codomain_dim(), {}};
    for (const auto& x : d.points.points) pts.points.push_back(a(x));
    return SimplexDatum{std::move(moved), std::move(pts)};
  };
  p.data_pair_generator = [point_count](const AffineMap& a, RngStream& rng) {
    const int m = a.domain_dim();
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      const Objective phi_hi = random_objective(a.codomain_dim(), rng);
      const PointSet X_lo = random_points(m, point_count(m), rng);
      auto pair = simplex_data_action(a, phi_hi, X_lo);
      if (!has_value_ties(pair.datum_lo.objective, pair.datum_lo.points) &&
          !has_value_ties(pair.datum_hi.objective, pair.datum_hi.points))
        return pair;
    }
    throw std::runtime_error("simplex pair generator: could not draw tie-free data");
  };
  p.data_membership = [](const AffineMap& a, const SimplexDatum& lo, const SimplexDatum& hi) {
    if (lo.points.size() != hi.points.size()) return kNonFiniteResidual;
    double worst = 0.0;
    for (int i = 0; i < lo.points.size(); ++i) {
      const Vec& x = lo.points.points[i];
      worst = std::max(worst, (hi.points.points[i] - a(x)).lpNorm<Eigen::Infinity>());
      const double v = hi.objective(a(x));
      worst = std::max(worst, std::abs(lo.objective(x) - v) / (1.0 + std::abs(v)));
    }
    return worst;
  };
  p.comp_residual = [](const AffineMap& a, const PointSet& X1, const PointSet& X2) {
    return comp_residual_simplex(a, X1, X2);
  };
  p.comp_pushforward = [](const AffineMap& a, const PointSet& X) {
    PointSet out{a.codomain_dim(), {}};
    for (const auto& x : X.points) out.points.push_back(a(x));
    return out;
  };
  p.comp_distance = [](const PointSet& X1, const PointSet& X2) {
    return comp_residual_simplex(AffineMap::identity(X1.dim), X1, X2);
  };
  return p;
}

}  // namespace affeq::simplex
