#include <benchmark/benchmark.h>

#include "affeq/harness.hpp"
#include "affeq/integrators.hpp"
#include "affeq/interpolation.hpp"
#include "affeq/simplex.hpp"

namespace {

using namespace affeq;

void BM_Rk4Step(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(1, 0);
  const auto f = integrators::random_field(d, rng);
  const auto tab = integrators::rk4_tableau();
  Vec x = rng.uniform_vector(d, -1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(integrators::rk_step(tab, f, x, 0.01));
}
BENCHMARK(BM_Rk4Step)->Arg(1)->Arg(3)->Arg(8);

void BM_DivmodStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(2, 0);
  const auto f = integrators::random_field(d, rng);
  Vec x = rng.uniform_vector(d, -1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(integrators::divmod_step(f, x, 0.01));
}
BENCHMARK(BM_DivmodStep)->Arg(1)->Arg(3)->Arg(8);

void BM_NelderMeadStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(3, 0);
  const auto phi = simplex::random_objective(d, rng);
  const auto X = simplex::random_points(d, d + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(simplex::nm_step(phi, X));
}
BENCHMARK(BM_NelderMeadStep)->Arg(2)->Arg(5);

void BM_BezierEval(benchmark::State& state) {
  RngStream rng(4, 0);
  const auto c = interpolation::bezier_curve(
      interpolation::random_points(3, static_cast<int>(state.range(0)), rng));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c(t));
    t = t >= 1.0 ? 0.0 : t + 1e-3;
  }
}
BENCHMARK(BM_BezierEval)->Arg(4)->Arg(16);

void BM_BSplineEval(benchmark::State& state) {
  RngStream rng(5, 0);
  const auto c = interpolation::bspline_curve(
      interpolation::random_points(3, static_cast<int>(state.range(0)), rng));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c(t));
    t = t >= 1.0 ? 0.0 : t + 1e-3;
  }
}
BENCHMARK(BM_BSplineEval)->Arg(4)->Arg(16);

void BM_CheckBijectiveRk4(benchmark::State& state) {
  const auto alg = integrators::family(integrators::rk4(), 0.1);
  const auto actions = integrators::actions();
  for (auto _ : state)
    benchmark::DoNotOptimize(check_bijective(alg, actions, 2, {"bench", 20, 1e-9, 42}));
}
BENCHMARK(BM_CheckBijectiveRk4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
