#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "affeq/interpolation.hpp"
#include "test_util.hpp"

namespace affeq::interpolation {
namespace {

using affeq::testing::mat;
using affeq::testing::max_abs;
using affeq::testing::vec;

// Newton divided differences on equispaced nodes.
Vec newton_oracle(const std::vector<Vec>& P, double t) {
  const int n = static_cast<int>(P.size());
  std::vector<double> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = static_cast<double>(i) / (n - 1);
  std::vector<Vec> coef = P;
  for (int j = 1; j < n; ++j)
    for (int i = n - 1; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j]);
  Vec out = coef[n - 1];
  for (int i = n - 2; i >= 0; --i) out = coef[i] + (t - nodes[i]) * out;
  return out;
}

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Explicit Bernstein expansion.
Vec bernstein_oracle(const std::vector<Vec>& P, double t) {
  const int deg = static_cast<int>(P.size()) - 1;
  Vec out = Vec::Zero(P[0].size());
  for (int i = 0; i <= deg; ++i)
    out += binomial(deg, i) * std::pow(t, i) * std::pow(1 - t, deg - i) * P[i];
  return out;
}

// Textbook recursive Cox-de Boor with the 0/0 = 0 convention; the last knot
// interval is closed at t = 1.
double cox_de_boor(const std::vector<double>& U, int i, int p, double t) {
  if (p == 0) {
    if (U[i] <= t && t < U[i + 1]) return 1.0;
    if (t == U.back() && U[i] < U[i + 1] && U[i + 1] == U.back()) return 1.0;
    return 0.0;
  }
  double left = 0, right = 0;
  if (U[i + p] != U[i]) left = (t - U[i]) / (U[i + p] - U[i]) * cox_de_boor(U, i, p - 1, t);
  if (U[i + p + 1] != U[i + 1])
    right = (U[i + p + 1] - t) / (U[i + p + 1] - U[i + 1]) * cox_de_boor(U, i + 1, p - 1, t);
  return left + right;
}

Vec spline_oracle(const std::vector<Vec>& P, double t) {
  const auto U = clamped_uniform_knots(static_cast<int>(P.size()));
  Vec out = Vec::Zero(P[0].size());
  for (std::size_t i = 0; i < P.size(); ++i)
    out += cox_de_boor(U, static_cast<int>(i), kSplineDegree, t) * P[i];
  return out;
}

ControlPoints pts(std::vector<Vec> p) { return ControlPoints::make(std::move(p)); }

TEST(ControlPointsTest, Validation) {
  EXPECT_THROW(pts({vec({1})}), ContractViolation);
  EXPECT_THROW(pts({vec({1}), vec({1, 2})}), ContractViolation);
}

TEST(Lagrange, TwoPointsIsALine) {
  const Vec A = vec({1, -2}), B = vec({3, 4});
  EXPECT_LE(max_abs(lagrange_curve(pts({A, B}))(0.5) - (A + B) / 2), 1e-15);
}

TEST(Lagrange, CollinearCollapsesToLine) {
  const auto c = lagrange_curve(pts({vec({0, 0}), vec({1, 2}), vec({2, 4})}));
  EXPECT_LE(max_abs(c(0.25) - vec({0.5, 1.0})), 1e-15);
}

TEST(Lagrange, HitsNodesAndMatchesNewton) {
  const std::vector<Vec> P = {vec({0, 0}), vec({1, 1}), vec({2, 0})};
  const auto c = lagrange_curve(pts(P));
  EXPECT_EQ(c(0.5), vec({1, 1}));
  EXPECT_EQ(c(0.0), P[0]);
  EXPECT_EQ(c(1.0), P[2]);
  EXPECT_LE(max_abs(c(0.25) - newton_oracle(P, 0.25)), 1e-14);
  EXPECT_LE(max_abs(c(0.25) - vec({0.5, 0.75})), 1e-15);
}

TEST(Lagrange, RandomAgainstNewton) {
  for (int t = 0; t < 20; ++t) {
    RngStream rng(1, t);
    const auto P = random_points(2, 2 + t % 6, rng);
    const auto c = lagrange_curve(P);
    for (double s : {0.13, 0.5, 0.77}) EXPECT_LE(max_abs(c(s) - newton_oracle(P.points, s)), 1e-11);
  }
}

TEST(Bezier, Endpoints) {
  RngStream rng(2, 0);
  const auto P = random_points(3, 5, rng);
  const auto c = bezier_curve(P);
  EXPECT_EQ(c(0.0), P.points.front());
  EXPECT_EQ(c(1.0), P.points.back());
}

TEST(Bezier, TwoPointsIsASegment) {
  const Vec A = vec({1, 0}), B = vec({-1, 3});
  const auto c = bezier_curve(pts({A, B}));
  for (double t : {0.1, 0.4, 0.9}) EXPECT_LE(max_abs(c(t) - ((1 - t) * A + t * B)), 1e-15);
}

TEST(Bezier, MidpointAgainstBernsteinOracle) {
  const std::vector<Vec> P = {vec({0, 0}), vec({1, 2}), vec({2, 0})};
  const auto c = bezier_curve(pts(P));
  EXPECT_LE(max_abs(c(0.5) - bernstein_oracle(P, 0.5)), 1e-12);
  EXPECT_LE(max_abs(c(0.5) - vec({1, 1})), 1e-12);
}

TEST(Bezier, RandomAgainstBernsteinOracle) {
  for (int t = 0; t < 20; ++t) {
    RngStream rng(3, t);
    const auto P = random_points(3, 2 + t % 7, rng);
    const auto c = bezier_curve(P);
    for (double s : {0.0, 0.21, 0.5, 0.93, 1.0})
      EXPECT_LE(max_abs(c(s) - bernstein_oracle(P.points, s)), 1e-12);
  }
}

TEST(BSpline, NeedsFourPoints) {
  EXPECT_THROW(bspline_curve(pts({vec({0}), vec({1}), vec({2})})), ContractViolation);
}

TEST(BSpline, KnotVector) {
  EXPECT_EQ(clamped_uniform_knots(4), (std::vector<double>{0, 0, 0, 0, 1, 1, 1, 1}));
  EXPECT_EQ(clamped_uniform_knots(6), (std::vector<double>{0, 0, 0, 0, 1.0 / 3, 2.0 / 3, 1, 1, 1, 1}));
}

TEST(BSpline, KnotMidpointAgainstRecursiveOracle) {
  const std::vector<Vec> P = {vec({0, 0}), vec({1, 3}), vec({3, -1}), vec({4, 2})};
  const auto c = bspline_curve(pts(P));
  EXPECT_LE(max_abs(c(0.5) - spline_oracle(P, 0.5)), 1e-12);
}

TEST(BSpline, RandomAgainstRecursiveOracle) {
  for (int t = 0; t < 20; ++t) {
    RngStream rng(4, t);
    const auto P = random_points(2, 4 + t % 5, rng);
    const auto c = bspline_curve(P);
    for (double s : parameter_grid(c, 21)) EXPECT_LE(max_abs(c(s) - spline_oracle(P.points, s)), 1e-12);
  }
}

TEST(BSpline, ConstantAndCollinear) {
  const Vec p = vec({1.5, -2});
  const auto constant = bspline_curve(pts({p, p, p, p, p}));
  for (double t : {0.0, 0.3, 0.66, 1.0}) EXPECT_LE(max_abs(constant(t) - p), 1e-15);
  std::vector<Vec> line;
  for (int i = 0; i < 6; ++i) line.push_back(vec({1.0 * i, 2.0 * i + 1}));
  const auto c = bspline_curve(pts(line));
  for (double t : parameter_grid(c)) {
    const Vec y = c(t);
    EXPECT_NEAR(y[1], 2 * y[0] + 1, 1e-13);
  }
  EXPECT_EQ(c(0.0), line.front());
  EXPECT_LE(max_abs(c(1.0) - line.back()), 1e-15);
}

TEST(PartitionOfUnity, BernsteinAndSpline) {
  for (int deg : {1, 2, 3, 5, 8})
    for (double t : {0.0, 0.17, 0.5, 0.999, 1.0}) {
      const auto w = bernstein_weights(deg, t);
      EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    }
  for (int count : {4, 5, 7, 10}) {
    const auto U = clamped_uniform_knots(count);
    for (int k = 0; k <= 50; ++k) {
      const auto N = bspline_basis(U, kSplineDegree, k / 50.0);
      ASSERT_EQ(static_cast<int>(N.size()), count);
      EXPECT_NEAR(std::accumulate(N.begin(), N.end(), 0.0), 1.0, 1e-12);
      for (double v : N) EXPECT_GE(v, -1e-15);
    }
  }
}

TEST(Actions, PointsAndCurves) {
  const auto P = pts({vec({0, 1}), vec({2, 3})});
  const AffineMap proj(mat({{1, 0}}), vec({0}));
  const auto Q = points_action(proj, P);
  EXPECT_EQ(Q.dim, 1);
  EXPECT_EQ(Q.points[0], vec({0}));
  EXPECT_EQ(Q.points[1], vec({2}));
  const auto same = points_action(AffineMap::identity(2), P);
  EXPECT_EQ(same.points, P.points);

  const AffineMap diag(mat({{1}, {1}}), vec({0, 0}));
  const auto c = curve_action(diag, bezier_curve(pts({vec({0}), vec({3}), vec({1})})));
  EXPECT_EQ(c.dim, 2);
  for (double t : parameter_grid(c)) EXPECT_EQ(c(t)[0], c(t)[1]);
}

TEST(Actions, SubspacePreservation) {
  // Points on an affine plane in R^3 give curves on that plane.
  RngStream rng(5, 0);
  const AffineMap a = random_map(MapKind::injective, 2, 3, rng);
  const Vec normal = Eigen::JacobiSVD<Mat>(a.linear().transpose(), Eigen::ComputeFullV)
                         .matrixV()
                         .col(2);
  const auto P = points_action(a, random_points(2, 6, rng));
  for (const auto& s : shipped_schemes()) {
    const auto c = s.build(P);
    for (double t : parameter_grid(c))
      EXPECT_NEAR(normal.dot(c(t) - a.translation()), 0.0, 1e-12) << s.name;
  }
}

TEST(Grid, Layout) {
  const auto g = parameter_grid(bezier_curve(pts({vec({0}), vec({1})})));
  ASSERT_EQ(g.size(), 50u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
}

TEST(ExactNaturality, BezierInjective) {
  const auto r = check_exact_naturality(family(shipped_schemes()[1]), actions(),
                                        class_sampler(MapClass::injective, 2, 3),
                                        {"bezier", 20, 1e-10, 42});
  EXPECT_TRUE(r.passed()) << r.max_residual;
}

TEST(ExactNaturality, BSplineSurjective) {
  const auto r = check_exact_naturality(family(shipped_schemes()[2]), actions(4),
                                        class_sampler(MapClass::surjective, 3, 2),
                                        {"bspline", 20, 1e-10, 42});
  EXPECT_TRUE(r.passed()) << r.max_residual;
}

TEST(ExactNaturality, LagrangeEmbedding) {
  const auto r = check_exact_naturality(family(shipped_schemes()[0]), actions(),
                                        class_sampler(MapClass::injective, 2, 3),
                                        {"lagrange", 20, 1e-10, 42});
  EXPECT_TRUE(r.passed()) << r.max_residual;
}

}  // namespace
}  // namespace affeq::interpolation
