#include <gtest/gtest.h>

#include "gzrep/duality.hpp"
#include "gzrep/errors.hpp"

using namespace gzrep;

TEST(Duality, GeneratorLists) {
  EXPECT_EQ(duality_generators(2).size(), 3u);
  EXPECT_EQ(duality_generators(3).size(), 6u);
}

TEST(Duality, SkewAtTwo) {
  for (const double h : {1.0, 0.37}) {
    const SuiteReport r = check_pairing_duality(2, HBar(h), 3, 41);
    ASSERT_EQ(r.checks.size(), 3u);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " err=" << c.max_error;
  }
}

TEST(Duality, SkewAtTwoWithOtherSpectrum) {
  DualityOptions opt;
  opt.top_row = {1.3, 0.2};
  const SuiteReport r = check_pairing_duality(2, HBar(1.0), 2, 5, opt);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " err=" << c.max_error;
}

TEST(Duality, SkewAtThreeLowering) {
  DualityOptions opt;
  opt.tol = 1e-7;
  opt.generators = {{3, 2}};
  const SuiteReport r = check_pairing_duality(3, HBar(1.0), 1, 7, opt);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_TRUE(r.checks[0].pass) << r.checks[0].max_error;
}

TEST(Duality, RejectsLargeN) { EXPECT_THROW(check_pairing_duality(4, HBar(1.0), 1, 1), ConfigurationError); }
