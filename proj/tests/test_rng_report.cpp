#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "affeq/report.hpp"
#include "affeq/rng.hpp"

namespace affeq {
namespace {

TEST(Rng, StreamsAreReproducible) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsDifferAcrossTrialsAndSeeds) {
  RngStream a(42, 0), b(42, 1), c(43, 0);
  const auto x = a.next_u64();
  EXPECT_NE(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(Rng, UniformRange) {
  RngStream rng(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const int k = rng.uniform_int(-2, 3);
    ASSERT_GE(k, -2);
    ASSERT_LE(k, 3);
  }
}

TEST(Rng, NormalMoments) {
  RngStream rng(2, 0);
  double s = 0, s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.05);
  EXPECT_NEAR(s2 / n, 1.0, 0.05);
}

TEST(Rng, SplitMixKnownValue) {
  // Reference value of the SplitMix64 finalizer for state 0 after one increment.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

EquivarianceReport sample_report() {
  EquivarianceReport r{"quadrature/simpson/bijective/1:1", 42, 3, 1e-9, 0.0, {}, 0};
  r.record(0, 1e-15, MapClass::bijective, "Hom(1,1) linear=[2] translation=[1]");
  r.record(1, 2e-3, MapClass::bijective, "Hom(1,1) linear=[-1] translation=[0]");
  r.record(2, 5e-16, MapClass::bijective, "Hom(1,1) linear=[3] translation=[0]");
  return r;
}

TEST(Report, RecordTracksMaxAndViolations) {
  const auto r = sample_report();
  EXPECT_EQ(r.max_residual, 2e-3);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].trial_index, 1u);
  EXPECT_FALSE(r.passed());
}

TEST(Report, NonFiniteResidualIsAViolation) {
  EquivarianceReport r{"s", 1, 1, 1e-9, 0.0, {}, 0};
  r.record(0, std::numeric_limits<double>::quiet_NaN(), MapClass::injective, "w");
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].residual, kNonFiniteResidual);
  EXPECT_EQ(r.max_residual, kNonFiniteResidual);
}

TEST(Report, JsonHasExactlyTheSchemaFields) {
  const std::string doc = to_json(sample_report());
  EXPECT_EQ(doc.find('\n'), std::string::npos);
  EXPECT_EQ(doc.rfind("{\"suite\":", 0), 0u);
  for (const char* key : {"\"seed\":", "\"trials\":", "\"tolerance\":", "\"max_residual\":",
                          "\"violations\":"})
    EXPECT_NE(doc.find(key), std::string::npos) << key;
  EXPECT_EQ(doc.find("generation_errors"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  const auto r = sample_report();
  const auto back = report_from_json(to_json(r));
  EXPECT_EQ(back.suite, r.suite);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.trials, r.trials);
  EXPECT_EQ(back.tolerance, r.tolerance);
  EXPECT_EQ(back.max_residual, r.max_residual);
  EXPECT_EQ(back.violations, r.violations);
  EXPECT_EQ(to_json(back), to_json(r));
}

}  // namespace
}  // namespace affeq
