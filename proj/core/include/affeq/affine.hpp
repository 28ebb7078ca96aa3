#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "affeq/rng.hpp"

namespace affeq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Relative singular-value cutoff used for rank decisions.
inline constexpr double kRankTolerance = 1e-10;
/// Largest condition number accepted by random_map.
inline constexpr double kConditionCap = 100.0;

/// Raised when an operation's dimensional precondition fails.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInvertible : public std::runtime_error {
 public:
  enum class Reason { shape, rank };
  NotInvertible(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

enum class MapClass { bijective, injective, surjective, neither };

std::string_view to_string(MapClass c) noexcept;
std::optional<MapClass> map_class_from_string(std::string_view s) noexcept;

/// An element of Hom(m, n): x -> linear * x + translation.
class AffineMap {
 public:
  AffineMap(Mat linear, Vec translation);

  static AffineMap identity(int dim);
  static AffineMap translation_only(Vec b);

  int domain_dim() const noexcept { return static_cast<int>(linear_.cols()); }
  int codomain_dim() const noexcept { return static_cast<int>(linear_.rows()); }
  const Mat& linear() const noexcept { return linear_; }
  const Vec& translation() const noexcept { return translation_; }

  Vec operator()(const Vec& x) const;

 private:
  Mat linear_;
  Vec translation_;
};

Vec apply(const AffineMap& a, const Vec& x);

/// outer o inner, i.e. x -> outer(inner(x)).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

/// The linear part; the tangent map of an affine map is constant.
const Mat& tangent(const AffineMap& a) noexcept;

AffineMap invert(const AffineMap& a);

int numerical_rank(const Mat& m, double rel_tol = kRankTolerance);
double condition_number(const Mat& m);

MapClass classify(const AffineMap& a);

struct PseudoInverses {
  /// left(a(x)) = x; present iff a is injective.
  std::optional<AffineMap> left;
  /// a(right(y)) = y; present iff a is surjective.
  std::optional<AffineMap> right;
};

PseudoInverses pseudo_inverses(const AffineMap& a);

/// Orthonormal basis (as columns) of ker(linear part); m x (m - rank).
Mat kernel_basis(const AffineMap& a);

enum class MapKind { invertible, injective, surjective, translation, scaling, rotation, shear };

std::string_view to_string(MapKind k) noexcept;

/// Random map of the requested family. Entries lie in [-2, 2] and the linear
/// part has condition number at most kConditionCap; candidates are resampled
/// until both hold.
AffineMap random_map(MapKind kind, int m, int n, RngStream& rng);

/// Random map in Hom(m, n) whose linear part has the given rank, built as an
/// injective map after a surjective one through R^rank.
AffineMap random_rank_deficient(int m, int n, int rank, RngStream& rng);

/// Invertible map drawn from a family chosen uniformly among translation,
/// scaling, rotation, shear and general invertible.
AffineMap random_invertible_mixed(int dim, RngStream& rng);

/// Random map of the given class; bijective requires m == n, neither draws
/// rank min(m, n) - 1.
AffineMap random_map_of_class(MapClass c, int m, int n, RngStream& rng);

/// Compact, round-trippable text form used in witness summaries.
std::string describe(const AffineMap& a);

}  // namespace affeq
