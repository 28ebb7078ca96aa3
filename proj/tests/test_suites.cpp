#include <gtest/gtest.h>

#include "affeq/suites.hpp"

namespace affeq::suites {
namespace {

SuiteRequest request(std::string module) {
  SuiteRequest r;
  r.module = std::move(module);
  r.trials = 5;
  return r;
}

TEST(Registry, Modules) {
  EXPECT_EQ(module_names(),
            (std::vector<std::string>{"quadrature", "integrators", "interpolation", "simplex"}));
  EXPECT_EQ(algorithm_names("integrators"),
            (std::vector<std::string>{"euler", "heun", "rk4", "divmod"}));
  EXPECT_EQ(supported_classes("quadrature"), std::vector<MapClass>{MapClass::bijective});
}

TEST(Registry, DimsFitClass) {
  EXPECT_TRUE(dims_fit_class({2, 2}, MapClass::bijective));
  EXPECT_FALSE(dims_fit_class({1, 2}, MapClass::bijective));
  EXPECT_TRUE(dims_fit_class({1, 2}, MapClass::injective));
  EXPECT_FALSE(dims_fit_class({3, 2}, MapClass::injective));
  EXPECT_TRUE(dims_fit_class({3, 2}, MapClass::surjective));
  EXPECT_TRUE(dims_fit_class({1, 1}, MapClass::neither));
  EXPECT_FALSE(dims_fit_class({0, 1}, MapClass::neither));
}

TEST(Validate, Errors) {
  EXPECT_THROW(validate(request("bogus")), ContractViolation);
  auto r = request("integrators");
  r.algorithms = {"nope"};
  EXPECT_THROW(validate(r), ContractViolation);
  r = request("quadrature");
  r.classes = {MapClass::injective};
  EXPECT_THROW(validate(r), ContractViolation);
  r = request("integrators");
  r.classes = {MapClass::injective};
  r.dims = {{3, 2}};
  EXPECT_THROW(validate(r), ContractViolation);
  r = request("quadrature");
  r.dims = {{2, 2}};
  EXPECT_THROW(validate(r), ContractViolation);
  r = request("simplex");
  r.dims = {{0, 1}};
  EXPECT_THROW(validate(r), ContractViolation);
  EXPECT_NO_THROW(validate(request("all")));
}

TEST(Run, SuiteNamesAndOrder) {
  auto r = request("integrators");
  r.algorithms = {"rk4"};
  r.classes = {MapClass::injective};
  r.dims = {{1, 2}};
  const auto reports = run(r);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].suite, "integrators/rk4/injective/1:2/h=0.01");
  EXPECT_EQ(reports[1].suite, "integrators/rk4/injective/1:2/h=0.1");
  EXPECT_EQ(reports[2].suite, "integrators/rk4/injective/1:2/h=1");
  for (const auto& rep : reports) {
    EXPECT_EQ(rep.trials, 5u);
    EXPECT_TRUE(rep.passed());
  }
}

TEST(Run, DimsRunUnderEveryFittingClass) {
  auto r = request("interpolation");
  r.algorithms = {"bezier"};
  r.dims = {{2, 2}};
  const auto reports = run(r);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].suite, "interpolation/bezier/bijective/2:2");
  EXPECT_EQ(reports[1].suite, "interpolation/bezier/neither/2:2");
}

TEST(Run, SimplexIncludesIterates) {
  auto r = request("simplex");
  r.classes = {MapClass::bijective};
  r.dims = {{2, 2}};
  const auto reports = run(r);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].suite, "simplex/nelder-mead/bijective/2:2");
  EXPECT_EQ(reports[1].suite, "simplex/nelder-mead-10/bijective/2:2");
}

TEST(Search, WitnessJsonRoundTrip) {
  const auto w = search("integrators", "divmod", MapClass::injective, {1, 2}, 500, 42, 1e-9);
  ASSERT_TRUE(w);
  const auto back = witness_from_json(witness_to_json(*w));
  EXPECT_EQ(back.suite, w->suite);
  EXPECT_EQ(back.seed, w->seed);
  EXPECT_EQ(back.trial_index, w->trial_index);
  EXPECT_EQ(back.residual, w->residual);
  EXPECT_EQ(back.map_class, w->map_class);
  EXPECT_EQ(back.map, w->map);
  const auto again = replay("integrators", "divmod", MapClass::injective, {1, 2}, w->seed,
                            w->trial_index);
  ASSERT_TRUE(again);
  EXPECT_EQ(again->residual, w->residual);
}

TEST(Search, PassingAlgorithmsHaveNoWitness) {
  EXPECT_FALSE(search("integrators", "heun", MapClass::surjective, {3, 2}, 200, 42, 1e-9));
  EXPECT_FALSE(search("simplex", "nelder-mead", MapClass::injective, {2, 3}, 200, 42, 1e-9));
  EXPECT_FALSE(search("interpolation", "lagrange", MapClass::neither, {3, 4}, 200, 42, 1e-9));
}

}  // namespace
}  // namespace affeq::suites
