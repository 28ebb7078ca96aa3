#include <gtest/gtest.h>

#include "affeq/harness.hpp"
#include "affeq/integrators.hpp"
#include "affeq/interpolation.hpp"
#include "affeq/quadrature.hpp"
#include "affeq/simplex.hpp"

namespace affeq {
namespace {

RunOptions opts(const std::string& suite, int trials = 20, std::uint64_t seed = 42) {
  return {suite, trials, kDefaultTolerance, seed};
}

TEST(IdentityLaw, QuadratureIsExactlyZero) {
  for (const auto& rule : quadrature::shipped_rules()) {
    const auto r = check_bijective(quadrature::family(rule), quadrature::actions(), 1,
                                   opts(rule.name()), fixed_map(AffineMap::identity(1)));
    EXPECT_EQ(r.max_residual, 0.0) << rule.name();
  }
}

TEST(IdentityLaw, IntegratorsAreExactlyZero) {
  for (const auto& m : integrators::shipped_methods())
    for (int d : {1, 2, 3}) {
      const auto alg = integrators::family(m, 0.1);
      const auto r = check_bijective(alg, integrators::actions(), d, opts(m.name),
                                     fixed_map(AffineMap::identity(d)));
      EXPECT_EQ(r.max_residual, 0.0) << m.name << " d=" << d;
      const auto w =
          check_weak_naturality(alg, integrators::actions(), AffineMap::identity(d), opts(m.name));
      EXPECT_EQ(w.max_residual, 0.0) << m.name << " d=" << d;
      EXPECT_TRUE(w.passed());
    }
}

TEST(IdentityLaw, InterpolationIsExactlyZero) {
  for (const auto& s : interpolation::shipped_schemes())
    for (int d : {1, 2, 3}) {
      const auto r = check_exact_naturality(interpolation::family(s),
                                            interpolation::actions(s.min_points),
                                            AffineMap::identity(d), opts(s.name));
      EXPECT_EQ(r.max_residual, 0.0) << s.name;
    }
}

TEST(IdentityLaw, SimplexIsExactlyZero) {
  for (int iterations : {1, 10})
    for (int d : {1, 2, 3}) {
      const auto alg = simplex::family(iterations);
      const auto r = check_bijective(alg, simplex::actions(), d, opts(alg.name),
                                     fixed_map(AffineMap::identity(d)));
      EXPECT_EQ(r.max_residual, 0.0) << alg.name;
      const auto w =
          check_weak_naturality(alg, simplex::actions(), AffineMap::identity(d), opts(alg.name));
      EXPECT_EQ(w.max_residual, 0.0) << alg.name;
    }
}

TEST(Composition, QuadratureActionsCohere) {
  for (int t = 0; t < 20; ++t) {
    RngStream rng(1, t);
    const AffineMap a = quadrature::random_scalar_map(rng);
    const AffineMap b = quadrature::random_scalar_map(rng);
    const auto d = quadrature::random_datum(rng);
    const auto once = quadrature::quad_data_action(compose(b, a), d);
    const auto twice = quadrature::quad_data_action(b, quadrature::quad_data_action(a, d));
    EXPECT_NEAR(once.alpha, twice.alpha, 1e-12 * (1 + std::abs(once.alpha)));
    EXPECT_NEAR(once.beta, twice.beta, 1e-12 * (1 + std::abs(once.beta)));
    EXPECT_EQ(once.orientation, twice.orientation);
    const auto rule = quadrature::gauss_legendre(5);
    const double v1 = quadrature::integrate(rule, once);
    const double v2 = quadrature::integrate(rule, twice);
    EXPECT_LE(std::abs(v1 - v2) / (1 + std::abs(v1)), 1e-12);
    EXPECT_NEAR(quadrature::quad_comp_action(compose(b, a), 0.7),
                quadrature::quad_comp_action(b, quadrature::quad_comp_action(a, 0.7)), 1e-12);
  }
}

TEST(Composition, InterpolationActionsCohere) {
  for (int t = 0; t < 20; ++t) {
    RngStream rng(2, t);
    const AffineMap a = random_map_of_class(MapClass::injective, 2, 3, rng);
    const AffineMap b = random_map_of_class(MapClass::surjective, 3, 2, rng);
    const auto P = interpolation::random_points(2, 5, rng);
    const auto once = interpolation::points_action(compose(b, a), P);
    const auto twice = interpolation::points_action(b, interpolation::points_action(a, P));
    for (int i = 0; i < P.size(); ++i)
      EXPECT_LE((once.points[i] - twice.points[i]).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(Composition, FieldPushforwardsCohere) {
  for (int t = 0; t < 10; ++t) {
    RngStream rng(3, t);
    const AffineMap a = random_map(MapKind::invertible, 2, 2, rng);
    const AffineMap b = random_map(MapKind::shear, 2, 2, rng);
    const auto f = integrators::random_field(2, rng);
    const auto once = integrators::field_pushforward(compose(b, a), f);
    const auto twice = integrators::field_pushforward(b, integrators::field_pushforward(a, f));
    for (const auto& y : integrators::probe_points(2))
      EXPECT_LE((once(y) - twice(y)).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(Determinism, ReportsAreIdenticalForEqualSeeds) {
  const auto alg = integrators::family(integrators::rk4(), 0.1);
  const auto r1 = check_weak_naturality(alg, integrators::actions(),
                                        class_sampler(MapClass::surjective, 3, 2), opts("rk4"));
  const auto r2 = check_weak_naturality(alg, integrators::actions(),
                                        class_sampler(MapClass::surjective, 3, 2), opts("rk4"));
  EXPECT_EQ(to_json(r1), to_json(r2));
  const auto r3 = check_weak_naturality(
      alg, integrators::actions(), class_sampler(MapClass::surjective, 3, 2), opts("rk4", 20, 43));
  EXPECT_NE(r1.max_residual, r3.max_residual);
}

TEST(Harness, GenerationErrorsAreNotViolations) {
  const auto alg = integrators::family(integrators::euler(), 0.1);
  auto actions = integrators::actions();
  actions.data_pair_generator = [](const AffineMap&, RngStream&) -> RelatedPair<integrators::VectorField> {
    throw std::runtime_error("no pair");
  };
  const auto r = check_weak_naturality(alg, actions, class_sampler(MapClass::injective, 1, 2),
                                       opts("euler", 5));
  EXPECT_EQ(r.generation_errors, 5u);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_FALSE(r.passed());
}

TEST(Harness, MembershipRecheckRejectsBadPairs) {
  const auto alg = integrators::family(integrators::euler(), 0.1);
  auto actions = integrators::actions();
  actions.data_membership = [](const AffineMap&, const integrators::VectorField&,
                               const integrators::VectorField&) { return 1.0; };
  const auto r = check_weak_naturality(alg, actions, class_sampler(MapClass::injective, 1, 2),
                                       opts("euler", 3));
  EXPECT_EQ(r.generation_errors, 3u);
}

TEST(Harness, ContractErrors) {
  const auto alg = quadrature::family(quadrature::midpoint());
  EXPECT_THROW(check_bijective(alg, quadrature::actions(), 2, opts("q")), ContractViolation);
  auto no_push = quadrature::actions();
  no_push.data_pushforward = nullptr;
  EXPECT_THROW(check_bijective(alg, no_push, 1, opts("q")), ContractViolation);
  const auto rk = integrators::family(integrators::rk4(), 0.1);
  EXPECT_THROW(search_counterexample(rk, integrators::actions(), MapClass::injective, 1, 2, 0, 42,
                                     kDefaultTolerance),
               ContractViolation);
}

TEST(Search, IdentityMapsNeverYieldAWitness) {
  for (const auto& m : integrators::shipped_methods()) {
    const auto w = search_counterexample(integrators::family(m, 0.1), integrators::actions(),
                                         fixed_map(AffineMap::identity(2)), 100, 42,
                                         kDefaultTolerance);
    EXPECT_FALSE(w) << m.name;
  }
}

TEST(Search, Rk4HasNoCounterexample) {
  const auto alg = integrators::family(integrators::rk4(), 0.1);
  const std::pair<MapClass, std::pair<int, int>> cases[] = {{MapClass::bijective, {2, 2}},
                                                            {MapClass::injective, {1, 2}},
                                                            {MapClass::surjective, {2, 1}}};
  for (const auto& [c, dims] : cases) {
    const auto w = search_counterexample(alg, integrators::actions(), c, dims.first, dims.second,
                                         500, 42, kDefaultTolerance);
    EXPECT_FALSE(w) << to_string(c);
  }
}

TEST(Search, DivmodWitnessReplays) {
  const auto alg = integrators::family(integrators::divmod(), 0.1);
  const auto sampler = class_sampler(MapClass::injective, 1, 2);
  const auto w =
      search_counterexample(alg, integrators::actions(), sampler, 500, 42, kDefaultTolerance);
  ASSERT_TRUE(w);
  EXPECT_GE(w->residual, 1e-3);
  const auto again = replay_trial(alg, integrators::actions(), sampler, w->seed, w->trial_index);
  ASSERT_TRUE(again);
  EXPECT_EQ(again->residual, w->residual);
}

}  // namespace
}  // namespace affeq
