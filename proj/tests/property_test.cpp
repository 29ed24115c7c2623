#include <gtest/gtest.h>

#include "property_suite.hpp"

namespace unitsurf {
namespace {

const testing::PropertySuiteResult& suite() {
  static const auto r = testing::run_property_suite();
  return r;
}

TEST(PropertySuite, HundredThousandSamples) { EXPECT_EQ(suite().samples, 100000u); }

TEST(PropertySuite, ConstraintResidual) {
  EXPECT_LE(suite().constraint_residual, 1e-8);
  // The interpolant derivative is one order lower than the state.
  EXPECT_LE(suite().fd_constraint_residual, 1e-6);
}

TEST(PropertySuite, SlopeBoundBelowUnitHeight) { EXPECT_EQ(suite().lemma2_violations, 0u); }

TEST(PropertySuite, ThetaStrictlyIncreasing) { EXPECT_EQ(suite().monotonicity_violations, 0u); }

TEST(PropertySuite, MirrorSymmetry) {
  EXPECT_LE(suite().symmetry_z, 1e-8);
  EXPECT_LE(suite().symmetry_theta, 1e-8);
}

TEST(PropertySuite, ForwardRunsCrossHeightOneAndReachPi) {
  EXPECT_EQ(suite().forward_runs, 200u);
  EXPECT_EQ(suite().barrier_failures, 0u);
  EXPECT_EQ(suite().reach_failures, 0u);
}

}  // namespace
}  // namespace unitsurf
