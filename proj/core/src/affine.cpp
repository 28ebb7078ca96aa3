#include "affeq/affine.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace affeq {

namespace {

std::string dims_message(std::string_view what, long expected, long got) {
  std::ostringstream os;
  os << what << ": expected dimension " << expected << ", got " << got;
  return os.str();
}

Eigen::VectorXd singular_values(const Mat& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<Mat>(m).singularValues();
}

constexpr int kMaxResample = 10000;

}  // namespace

std::string_view to_string(MapClass c) noexcept {
  switch (c) {
    case MapClass::bijective: return "bijective";
    case MapClass::injective: return "injective";
    case MapClass::surjective: return "surjective";
    case MapClass::neither: return "neither";
  }
  return "?";
}

std::optional<MapClass> map_class_from_string(std::string_view s) noexcept {
  for (auto c : {MapClass::bijective, MapClass::injective, MapClass::surjective, MapClass::neither})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::string_view to_string(MapKind k) noexcept {
  switch (k) {
    case MapKind::invertible: return "invertible";
    case MapKind::injective: return "injective";
    case MapKind::surjective: return "surjective";
    case MapKind::translation: return "translation";
    case MapKind::scaling: return "scaling";
    case MapKind::rotation: return "rotation";
    case MapKind::shear: return "shear";
  }
  return "?";
}

AffineMap::AffineMap(Mat linear, Vec translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (linear_.rows() < 1 || linear_.cols() < 1)
    throw ContractViolation("AffineMap: dimensions must be positive");
  if (translation_.size() != linear_.rows())
    throw ContractViolation(dims_message("AffineMap translation length vs codomain",
                                         linear_.rows(), translation_.size()));
}

AffineMap AffineMap::identity(int dim) {
  return AffineMap(Mat::Identity(dim, dim), Vec::Zero(dim));
}

AffineMap AffineMap::translation_only(Vec b) {
  const auto d = b.size();
  return AffineMap(Mat::Identity(d, d), std::move(b));
}

Vec AffineMap::operator()(const Vec& x) const {
  if (x.size() != linear_.cols())
    throw ContractViolation(dims_message("apply", linear_.cols(), x.size()));
  return linear_ * x + translation_;
}

Vec apply(const AffineMap& a, const Vec& x) { return a(x); }

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  if (outer.domain_dim() != inner.codomain_dim())
    throw ContractViolation(dims_message("compose: outer domain vs inner codomain",
                                         outer.domain_dim(), inner.codomain_dim()));
  return AffineMap(outer.linear() * inner.linear(),
                   outer.linear() * inner.translation() + outer.translation());
}

const Mat& tangent(const AffineMap& a) noexcept { return a.linear(); }

int numerical_rank(const Mat& m, double rel_tol) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s[0] == 0.0) return 0;
  const double cutoff = rel_tol * s[0];
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > cutoff) ++rank;
  return rank;
}

double condition_number(const Mat& m) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0) return 1.0;
  const double smin = s[s.size() - 1];
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : s[0] / smin;
}

AffineMap invert(const AffineMap& a) {
  if (a.domain_dim() != a.codomain_dim())
    throw NotInvertible(NotInvertible::Reason::shape,
                        "invert: map is " + std::to_string(a.codomain_dim()) + "x" +
                            std::to_string(a.domain_dim()) + ", not square");
  if (numerical_rank(a.linear()) < a.domain_dim())
    throw NotInvertible(NotInvertible::Reason::rank, "invert: linear part is numerically singular");
  Mat inv = a.linear().partialPivLu().inverse();
  Vec t = -(inv * a.translation());
  return AffineMap(std::move(inv), std::move(t));
}

MapClass classify(const AffineMap& a) {
  const int m = a.domain_dim();
  const int n = a.codomain_dim();
  const int r = numerical_rank(a.linear());
  if (m == n && r == m) return MapClass::bijective;
  if (r == m) return MapClass::injective;
  if (r == n) return MapClass::surjective;
  return MapClass::neither;
}

PseudoInverses pseudo_inverses(const AffineMap& a) {
  PseudoInverses out;
  const int m = a.domain_dim();
  const int n = a.codomain_dim();
  const int r = numerical_rank(a.linear());
  const Mat& A = a.linear();
  const Vec& b = a.translation();
  if (r == m) {
    // L = (A^T A)^{-1} A^T, and left(y) = L (y - b).
    Mat left = (A.transpose() * A).ldlt().solve(A.transpose());
    Vec t = -(left * b);
    out.left = AffineMap(std::move(left), std::move(t));
  }
  if (r == n) {
    // S = A^T (A A^T)^{-1}, and right(y) = S (y - b).
    Mat right = (A * A.transpose()).ldlt().solve(A).transpose();
    Vec t = -(right * b);
    out.right = AffineMap(std::move(right), std::move(t));
  }
  return out;
}

Mat kernel_basis(const AffineMap& a) {
  const Mat& A = a.linear();
  const int m = a.domain_dim();
  const int r = numerical_rank(A);
  if (r == m) return Mat(m, 0);
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(m - r);
}

namespace {

Mat random_bounded_full_rank(int rows, int cols, RngStream& rng) {
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    Mat A = rng.uniform_matrix(rows, cols, -2.0, 2.0);
    if (condition_number(A) <= kConditionCap) return A;
  }
  throw std::runtime_error("random_map: could not draw a well-conditioned matrix");
}

Mat random_rotation(int d, RngStream& rng) {
  if (d == 1) return Mat::Identity(1, 1);
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    const Mat G = rng.normal_matrix(d, d);
    if (condition_number(G) > 1e8) continue;
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ();
    const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
      if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
    if (Q.determinant() < 0.0) Q.col(0) = -Q.col(0);
    return Q;
  }
  throw std::runtime_error("random_map: rotation sampling failed");
}

Mat random_shear(int d, RngStream& rng) {
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    Mat S = Mat::Identity(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) S(i, j) = rng.uniform(-1.0, 1.0);
    if (condition_number(S) <= kConditionCap) return S;
  }
  throw std::runtime_error("random_map: shear sampling failed");
}

void require(bool ok, MapKind kind, int m, int n) {
  if (!ok)
    throw ContractViolation("random_map: kind '" + std::string(to_string(kind)) +
                            "' is inconsistent with Hom(" + std::to_string(m) + "," +
                            std::to_string(n) + ")");
}

}  // namespace

AffineMap random_map(MapKind kind, int m, int n, RngStream& rng) {
  require(m >= 1 && n >= 1, kind, m, n);
  switch (kind) {
    case MapKind::invertible:
    case MapKind::translation:
    case MapKind::scaling:
    case MapKind::rotation:
    case MapKind::shear:
      require(m == n, kind, m, n);
      break;
    case MapKind::injective: require(m <= n, kind, m, n); break;
    case MapKind::surjective: require(m >= n, kind, m, n); break;
  }

  Mat A;
  switch (kind) {
    case MapKind::invertible:
    case MapKind::injective:
    case MapKind::surjective: A = random_bounded_full_rank(n, m, rng); break;
    case MapKind::translation: A = Mat::Identity(n, n); break;
    case MapKind::scaling: A = rng.uniform_vector(n, 0.5, 2.0).asDiagonal(); break;
    case MapKind::rotation: A = random_rotation(n, rng); break;
    case MapKind::shear: A = random_shear(n, rng); break;
  }
  Vec b = rng.uniform_vector(n, -2.0, 2.0);
  return AffineMap(std::move(A), std::move(b));
}

AffineMap random_rank_deficient(int m, int n, int rank, RngStream& rng) {
  if (rank < 0 || rank > std::min(m, n))
    throw ContractViolation("random_rank_deficient: rank out of range");
  if (rank == 0) return AffineMap(Mat::Zero(n, m), rng.uniform_vector(n, -2.0, 2.0));
  const AffineMap down = random_map(MapKind::surjective, m, rank, rng);
  const AffineMap up = random_map(MapKind::injective, rank, n, rng);
  return compose(up, down);
}

AffineMap random_invertible_mixed(int dim, RngStream& rng) {
  static constexpr MapKind kinds[] = {MapKind::translation, MapKind::scaling, MapKind::rotation,
                                      MapKind::shear, MapKind::invertible};
  const MapKind kind = kinds[rng.uniform_int(0, 4)];
  return random_map(kind, dim, dim, rng);
}

AffineMap random_map_of_class(MapClass c, int m, int n, RngStream& rng) {
  switch (c) {
    case MapClass::bijective:
      if (m != n) throw ContractViolation("random_map_of_class: bijective needs m == n");
      return random_invertible_mixed(m, rng);
    case MapClass::injective: return random_map(MapKind::injective, m, n, rng);
    case MapClass::surjective: return random_map(MapKind::surjective, m, n, rng);
    case MapClass::neither: return random_rank_deficient(m, n, std::min(m, n) - 1, rng);
  }
  throw ContractViolation("random_map_of_class: unknown class");
}

std::string describe(const AffineMap& a) {
  std::string out = "Hom(" + std::to_string(a.domain_dim()) + "," +
                    std::to_string(a.codomain_dim()) + ") linear=[";
  char buf[32];
  for (int i = 0; i < a.codomain_dim(); ++i) {
    if (i) out += ';';
    for (int j = 0; j < a.domain_dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%s%.17g", j ? "," : "", a.linear()(i, j));
      out += buf;
    }
  }
  out += "] translation=[";
  for (int i = 0; i < a.codomain_dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", a.translation()[i]);
    out += buf;
  }
  out += ']';
  return out;
}

}  // namespace affeq
