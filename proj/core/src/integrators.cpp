#include "affeq/integrators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace affeq::integrators {

namespace {

void require_dim(const VectorField& f, const Vec& x, const char* where) {
  if (x.size() != f.dim)
    throw ContractViolation(std::string(where) + ": field has dimension " +
                            std::to_string(f.dim) + ", point has dimension " +
                            std::to_string(x.size()));
}

Mat central_difference_jacobian(const VectorField& f, const Vec& x) {
  const double scale = std::cbrt(std::numeric_limits<double>::epsilon());
  Mat J(f.dim, f.dim);
  for (int j = 0; j < f.dim; ++j) {
    const double delta = scale * std::max(1.0, std::abs(x[j]));
    Vec xp = x, xm = x;
    xp[j] += delta;
    xm[j] -= delta;
    J.col(j) = (f(xp) - f(xm)) / (xp[j] - xm[j]);
  }
  return J;
}

constexpr std::uint64_t kProbeSeed = 0x70726f6265ULL;

}  // namespace

double jacobian_mismatch(const VectorField& f, const std::vector<Vec>& probes) {
  if (!f.has_jacobian()) return 0.0;
  double worst = 0.0;
  for (const Vec& x : probes) {
    const Mat diff = f.jacobian(x) - central_difference_jacobian(f, x);
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return worst;
}

VectorField validated(VectorField f, RngStream& rng) {
  std::vector<Vec> probes;
  for (int i = 0; i < 10; ++i) probes.push_back(rng.uniform_vector(f.dim, -2.0, 2.0));
  if (jacobian_mismatch(f, probes) > 1e-5)
    throw ContractViolation("VectorField: analytic Jacobian disagrees with finite differences");
  return f;
}

ButcherTableau::ButcherTableau(Mat a, Vec b, Vec c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  const auto s = b_.size();
  if (s < 1 || a_.rows() != s || a_.cols() != s || c_.size() != s)
    throw std::invalid_argument("ButcherTableau: inconsistent stage counts");
  if (std::abs(b_.sum() - 1.0) > 1e-14)
    throw std::invalid_argument("ButcherTableau: weights do not sum to 1");
  for (int i = 0; i < s; ++i)
    if (std::abs(a_.row(i).sum() - c_[i]) > 1e-14)
      throw std::invalid_argument("ButcherTableau: row-sum condition violated");
}

bool ButcherTableau::is_explicit() const noexcept {
  for (int i = 0; i < stages(); ++i)
    for (int j = i; j < stages(); ++j)
      if (a_(i, j) != 0.0) return false;
  return true;
}

ButcherTableau heun_tableau() {
  Mat a{{0.0, 0.0}, {1.0, 0.0}};
  Vec b{{0.5, 0.5}};
  Vec c{{0.0, 1.0}};
  return {a, b, c};
}

ButcherTableau rk4_tableau() {
  Mat a = Mat::Zero(4, 4);
  a(1, 0) = 0.5;
  a(2, 1) = 0.5;
  a(3, 2) = 1.0;
  Vec b{{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0}};
  Vec c{{0.0, 0.5, 0.5, 1.0}};
  return {a, b, c};
}

Vec euler_step(const VectorField& f, const Vec& x, double h) {
  require_dim(f, x, "euler_step");
  return x + h * f(x);
}

Vec rk_step(const ButcherTableau& tab, const VectorField& f, const Vec& x, double h) {
  require_dim(f, x, "rk_step");
  if (!tab.is_explicit()) throw ContractViolation("rk_step: implicit tableaux are unsupported");
  const int s = tab.stages();
  std::vector<Vec> k;
  k.reserve(s);
  for (int i = 0; i < s; ++i) {
    Vec stage_increment = Vec::Zero(f.dim);
    for (int j = 0; j < i; ++j)
      if (tab.a()(i, j) != 0.0) stage_increment += tab.a()(i, j) * k[j];
    k.push_back(f(x + h * stage_increment));
  }
  Vec increment = Vec::Zero(f.dim);
  for (int i = 0; i < s; ++i) increment += tab.b()[i] * k[i];
  return x + h * increment;
}

double divergence(const VectorField& f, const Vec& x) {
  require_dim(f, x, "divergence");
  if (f.has_jacobian()) return f.jacobian(x).trace();
  return central_difference_jacobian(f, x).trace();
}

Vec divmod_step(const VectorField& f, const Vec& x, double h) {
  require_dim(f, x, "divmod_step");
  return x + h * (f(x) * (1.0 + divergence(f, x)));
}

OneStepMethod euler() { return {"euler", euler_step}; }

OneStepMethod heun() {
  return {"heun", [tab = heun_tableau()](const VectorField& f, const Vec& x, double h) {
            return rk_step(tab, f, x, h);
          }};
}

OneStepMethod rk4() {
  return {"rk4", [tab = rk4_tableau()](const VectorField& f, const Vec& x, double h) {
            return rk_step(tab, f, x, h);
          }};
}

OneStepMethod divmod() { return {"divmod", divmod_step}; }

std::vector<OneStepMethod> shipped_methods() { return {euler(), heun(), rk4(), divmod()}; }

VectorField field_pushforward(const AffineMap& a, const VectorField& f) {
  if (a.domain_dim() != f.dim)
    throw ContractViolation("field_pushforward: map domain " + std::to_string(a.domain_dim()) +
                            " vs field dimension " + std::to_string(f.dim));
  const AffineMap inv = invert(a);
  const Mat A = a.linear();
  VectorField out;
  out.dim = a.codomain_dim();
  out.eval = [f, inv, A](const Vec& y) -> Vec { return A * f(inv(y)); };
  if (f.has_jacobian())
    out.jacobian = [f, inv, A](const Vec& y) -> Mat {
      return A * f.jacobian(inv(y)) * inv.linear();
    };
  return out;
}

VectorField related_field_injective(const AffineMap& a, const VectorField& f1,
                                    const std::optional<VectorField>& transverse,
                                    RngStream& rng) {
  const int m = a.domain_dim();
  const int n = a.codomain_dim();
  if (f1.dim != m) throw ContractViolation("related_field_injective: f1 dimension mismatch");
  const auto inverses = pseudo_inverses(a);
  if (!inverses.left)
    throw ContractViolation("related_field_injective: map is " +
                            std::string(to_string(classify(a))) + ", not injective");
  const AffineMap left = *inverses.left;
  const Mat A = a.linear();

  VectorField out;
  out.dim = n;
  if (transverse) {
    if (transverse->dim != n)
      throw ContractViolation("related_field_injective: transverse field dimension mismatch");
    const VectorField t = *transverse;
    out.eval = [a, left, A, f1, t](const Vec& y) -> Vec {
      const Vec x = left(y);
      return A * f1(x) + (t(y) - t(a(x)));
    };
    if (f1.has_jacobian() && t.has_jacobian())
      out.jacobian = [a, left, A, f1, t](const Vec& y) -> Mat {
        const Vec x = left(y);
        const Mat AL = A * left.linear();
        return A * f1.jacobian(x) * left.linear() + t.jacobian(y) - t.jacobian(a(x)) * AL;
      };
    return out;
  }

  const Mat G0 = rng.uniform_matrix(n, n, -1.0, 1.0);
  const Mat G1 = rng.uniform_matrix(n, n, -1.0, 1.0);
  const Vec w = rng.uniform_vector(n, -1.0, 1.0);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  out.eval = [=](const Vec& y) -> Vec {
    const Vec x = left(y);
    const Vec r = y - a(x);
    return A * f1(x) + (G0 + G1 * std::sin(w.dot(y) + phase)) * r;
  };
  if (f1.has_jacobian())
    out.jacobian = [=](const Vec& y) -> Mat {
      const Vec x = left(y);
      const Vec r = y - a(x);
      const double arg = w.dot(y) + phase;
      const Mat P = Mat::Identity(n, n) - A * left.linear();
      return A * f1.jacobian(x) * left.linear() + (G0 + G1 * std::sin(arg)) * P +
             (G1 * r) * (std::cos(arg) * w.transpose());
    };
  return out;
}

VectorField related_field_surjective(const AffineMap& a, const VectorField& f2,
                                     const std::optional<VectorField>& kernel_part,
                                     RngStream& rng) {
  const int m = a.domain_dim();
  const int n = a.codomain_dim();
  if (f2.dim != n) throw ContractViolation("related_field_surjective: f2 dimension mismatch");
  const auto inverses = pseudo_inverses(a);
  if (!inverses.right)
    throw ContractViolation("related_field_surjective: map is " +
                            std::string(to_string(classify(a))) + ", not surjective");
  const Mat S = inverses.right->linear();
  const Mat A = a.linear();
  const Mat N = kernel_basis(a);
  const int kdim = static_cast<int>(N.cols());

  VectorField out;
  out.dim = m;
  if (kdim == 0) {
    out.eval = [a, S, f2](const Vec& x) -> Vec { return S * f2(a(x)); };
    if (f2.has_jacobian())
      out.jacobian = [a, S, A, f2](const Vec& x) -> Mat { return S * f2.jacobian(a(x)) * A; };
    return out;
  }

  if (kernel_part) {
    if (kernel_part->dim != m)
      throw ContractViolation("related_field_surjective: kernel part dimension mismatch");
    const VectorField k = *kernel_part;
    const Mat proj = N * N.transpose();
    out.eval = [a, S, f2, k, proj](const Vec& x) -> Vec { return S * f2(a(x)) + proj * k(x); };
    if (f2.has_jacobian() && k.has_jacobian())
      out.jacobian = [a, S, A, f2, k, proj](const Vec& x) -> Mat {
        return S * f2.jacobian(a(x)) * A + proj * k.jacobian(x);
      };
    return out;
  }

  const int width = m + 1;
  const Mat U = rng.uniform_matrix(kdim, width, -1.0, 1.0);
  const Mat V = rng.uniform_matrix(width, m, -1.0, 1.0);
  const Vec p = rng.uniform_vector(width, 0.0, 2.0 * std::numbers::pi);
  const Vec c = rng.uniform_vector(kdim, -1.0, 1.0);
  out.eval = [=](const Vec& x) -> Vec {
    const Vec z = V * x + p;
    return S * f2(a(x)) + N * (U * z.array().sin().matrix() + c);
  };
  if (f2.has_jacobian())
    out.jacobian = [=](const Vec& x) -> Mat {
      const Vec z = V * x + p;
      return S * f2.jacobian(a(x)) * A + N * U * z.array().cos().matrix().asDiagonal() * V;
    };
  return out;
}

double field_membership(const AffineMap& a, const VectorField& f1, const VectorField& f2,
                        const std::vector<Vec>& probes) {
  double worst = 0.0;
  for (const Vec& x : probes)
    worst = std::max(worst, (f2(a(x)) - a.linear() * f1(x)).lpNorm<Eigen::Infinity>());
  return worst;
}

double comp_residual_integrator(const AffineMap& a, const OneStepMethod& method,
                                const VectorField& f1, const VectorField& f2, double h,
                                const std::vector<Vec>& probes) {
  double worst = 0.0;
  for (const Vec& x : probes) {
    const Vec lhs = method.step(f2, a(x), h);
    const Vec rhs = a(method.step(f1, x, h));
    worst = std::max(worst, (lhs - rhs).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

std::vector<Vec> probe_points(int dim, int count) {
  RngStream rng(kProbeSeed, static_cast<std::uint64_t>(dim));
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec dir(dim);
    for (int j = 0; j < dim; ++j) dir[j] = rng.normal();
    const double norm = dir.norm();
    const double radius = 2.0 * std::pow(rng.uniform(), 1.0 / dim);
    out.push_back(norm > 0.0 ? Vec(dir * (radius / norm)) : Vec(Vec::Zero(dim)));
  }
  return out;
}

VectorField random_field(int dim, RngStream& rng) {
  const int width = dim + 1;
  const Mat M = rng.uniform_matrix(dim, dim, -0.5, 0.5);
  const Vec e = rng.uniform_vector(dim, -1.0, 1.0);
  const Mat U = rng.uniform_matrix(dim, width, -1.0, 1.0);
  const Mat V = rng.uniform_matrix(width, dim, -1.0, 1.0);
  const Vec p = rng.uniform_vector(width, 0.0, 2.0 * std::numbers::pi);
  VectorField f;
  f.dim = dim;
  f.eval = [=](const Vec& x) -> Vec {
    const Vec z = V * x + p;
    return M * x + e + U * z.array().sin().matrix();
  };
  f.jacobian = [=](const Vec& x) -> Mat {
    const Vec z = V * x + p;
    return M + U * z.array().cos().matrix().asDiagonal() * V;
  };
  return f;
}

AlgorithmFamily<VectorField, OneStepMap> family(const OneStepMethod& method, double h) {
  AlgorithmFamily<VectorField, OneStepMap> alg;
  alg.name = method.name;
  alg.evaluate = [method, h](int dim, const VectorField& f) {
    if (f.dim != dim) throw ContractViolation("integrator family: field dimension mismatch");
    return OneStepMap{dim, [method, f, h](const Vec& x) { return method.step(f, x, h); }};
  };
  return alg;
}

ActionPair<VectorField, OneStepMap> actions() {
  ActionPair<VectorField, OneStepMap> p;
  p.sample_datum = [](int dim, RngStream& rng) { return random_field(dim, rng); };
  p.data_pushforward = field_pushforward;
  p.data_pair_generator = [](const AffineMap& a, RngStream& rng) {
    const int m = a.domain_dim();
    const int n = a.codomain_dim();
    const MapClass cls = classify(a);
    if (cls == MapClass::bijective || cls == MapClass::injective) {
      VectorField f1 = random_field(m, rng);
      VectorField f2 = related_field_injective(a, f1, std::nullopt, rng);
      return RelatedPair<VectorField>{m, n, std::move(f1), std::move(f2), a};
    }
    if (cls == MapClass::surjective) {
      VectorField f2 = random_field(n, rng);
      VectorField f1 = related_field_surjective(a, f2, std::nullopt, rng);
      return RelatedPair<VectorField>{m, n, std::move(f1), std::move(f2), a};
    }
    throw ContractViolation("integrator pair generator: map is neither injective nor surjective");
  };
  p.data_membership = [](const AffineMap& a, const VectorField& f1, const VectorField& f2) {
    return field_membership(a, f1, f2, probe_points(a.domain_dim()));
  };
  p.comp_residual = [](const AffineMap& a, const OneStepMap& c1, const OneStepMap& c2) {
    double worst = 0.0;
    for (const Vec& x : probe_points(a.domain_dim()))
      worst = std::max(worst, (c2.map(a(x)) - a(c1.map(x))).lpNorm<Eigen::Infinity>());
    return worst;
  };
  return p;
}

}  // namespace affeq::integrators
