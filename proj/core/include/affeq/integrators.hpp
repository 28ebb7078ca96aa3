#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "affeq/affine.hpp"
#include "affeq/harness.hpp"

namespace affeq::integrators {

/// Smooth field R^d -> R^d, with an optional analytic Jacobian.
struct VectorField {
  int dim = 0;
  std::function<Vec(const Vec&)> eval;
  std::function<Mat(const Vec&)> jacobian;

  Vec operator()(const Vec& x) const { return eval(x); }
  bool has_jacobian() const noexcept { return static_cast<bool>(jacobian); }
};

/// Max deviation between the analytic Jacobian and central differences over
/// the given probes; 0 when no Jacobian is present.
double jacobian_mismatch(const VectorField& f, const std::vector<Vec>& probes);

/// Returns f after checking its Jacobian against finite differences at 10
/// random probes (tolerance 1e-5); throws ContractViolation otherwise.
VectorField validated(VectorField f, RngStream& rng);

class ButcherTableau {
 public:
  /// Throws std::invalid_argument when sum(b) != 1 or c is not the row sum
  /// of a (both to 1e-14).
  ButcherTableau(Mat a, Vec b, Vec c);

  int stages() const noexcept { return static_cast<int>(b_.size()); }
  const Mat& a() const noexcept { return a_; }
  const Vec& b() const noexcept { return b_; }
  const Vec& c() const noexcept { return c_; }
  bool is_explicit() const noexcept;

 private:
  Mat a_;
  Vec b_;
  Vec c_;
};

ButcherTableau heun_tableau();
ButcherTableau rk4_tableau();

struct OneStepMethod {
  std::string name;
  std::function<Vec(const VectorField&, const Vec&, double)> step;
};

Vec euler_step(const VectorField& f, const Vec& x, double h);
/// Explicit Runge-Kutta step; implicit tableaux raise ContractViolation.
Vec rk_step(const ButcherTableau& tab, const VectorField& f, const Vec& x, double h);
/// x + h f(x) (1 + div f(x)).
Vec divmod_step(const VectorField& f, const Vec& x, double h);

/// Trace of the Jacobian; central differences with step
/// cbrt(eps) * max(1, |x_i|) when no analytic Jacobian is present.
double divergence(const VectorField& f, const Vec& x);

OneStepMethod euler();
OneStepMethod heun();
OneStepMethod rk4();
OneStepMethod divmod();
/// euler, heun, rk4, divmod.
std::vector<OneStepMethod> shipped_methods();

/// a . f = T a o f o a^-1 with the Jacobian propagated by the chain rule.
VectorField field_pushforward(const AffineMap& a, const VectorField& f);

/// f2 on R^n with f2 o a = T a o f1. Off the image of a the field is
/// T a f1(l(y)) + G(y) R(y), where l is the left pseudo-inverse,
/// R(y) = y - a(l(y)) and G a bounded random smooth matrix field; when
/// `transverse` is given the perturbation is t(y) - t(a(l(y))) instead.
VectorField related_field_injective(const AffineMap& a, const VectorField& f1,
                                    const std::optional<VectorField>& transverse, RngStream& rng);

/// f1 on R^m with T a f1 = f2 o a: f1(x) = S f2(a(x)) + N k(x), where S is the
/// right pseudo-inverse of T a and N an orthonormal kernel basis. k is random
/// unless `kernel_part` is given, in which case it is projected onto ker T a.
VectorField related_field_surjective(const AffineMap& a, const VectorField& f2,
                                     const std::optional<VectorField>& kernel_part,
                                     RngStream& rng);

/// max over probes |f2(a(x)) - T a f1(x)|.
double field_membership(const AffineMap& a, const VectorField& f1, const VectorField& f2,
                        const std::vector<Vec>& probes);

/// max over probes |step(f2, a(x), h) - a(step(f1, x, h))|.
double comp_residual_integrator(const AffineMap& a, const OneStepMethod& method,
                                const VectorField& f1, const VectorField& f2, double h,
                                const std::vector<Vec>& probes);

/// Deterministic probes, uniform in the ball of radius 2 in R^dim.
std::vector<Vec> probe_points(int dim, int count = 20);

/// Generic field x -> M x + e + U sin(V x + p) with analytic Jacobian.
VectorField random_field(int dim, RngStream& rng);

/// Alg(f) = [x -> step(f, x, h)].
struct OneStepMap {
  int dim = 0;
  std::function<Vec(const Vec&)> map;
};

AlgorithmFamily<VectorField, OneStepMap> family(const OneStepMethod& method, double h);

/// Graph actions for bijective maps (pushforward), plus related-pair
/// generators that dispatch on the class of the map: injective maps use
/// related_field_injective, surjective maps related_field_surjective.
ActionPair<VectorField, OneStepMap> actions();

}  // namespace affeq::integrators
