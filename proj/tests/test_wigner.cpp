#include <cmath>

#include <gtest/gtest.h>

#include "precession/errors.hpp"
#include "precession/oscillator.hpp"
#include "precession/wigner.hpp"

using namespace precession;

TEST(Wedge, DeviationExamples) {
  EXPECT_EQ(score_to_wedge_deviation(0.5), 0.0);
  EXPECT_NEAR(score_to_wedge_deviation(2.0 / 3.0), 0.5, 1e-15);
  EXPECT_NEAR(score_to_wedge_deviation(0.709364), 0.628092, 1e-9);
  for (double p : {0.5, 0.6, 0.7, 0.75}) EXPECT_NEAR(wedge_deviation_to_score(score_to_wedge_deviation(p)), p, 1e-15);
}

TEST(Wedge, TripleBounds) {
  auto [lo, hi] = triple_wedge_bounds(0.709364, 0.730822);
  EXPECT_NEAR(lo, 0.628092, 1e-5);
  EXPECT_NEAR(hi, 0.692466, 1e-5);
  // printed as 0.692464; the last digit is a rounding difference
  EXPECT_NEAR(hi, 0.692464, 1e-5);

  std::tie(lo, hi) = triple_wedge_bounds(2.0 / 3.0, 2.0 / 3.0);
  EXPECT_NEAR(lo, 0.5, 1e-15);
  EXPECT_NEAR(hi, 0.5, 1e-15);

  std::tie(lo, hi) = triple_wedge_bounds(0.708741, 0.822607);
  EXPECT_NEAR(hi, 0.967820, 1e-5);
  EXPECT_THROW(triple_wedge_bounds(0.73, 0.70), ValidationError);
}

TEST(Wedge, NegativityVolume) {
  EXPECT_EQ(negativity_volume_lower_bound(2.0 / 3.0), 0.0);
  EXPECT_EQ(negativity_volume_lower_bound(0.6), 0.0);
  EXPECT_NEAR(negativity_volume_lower_bound(0.709364), 0.128092, 1e-12);
  EXPECT_NEAR(negativity_volume_lower_bound(0.75), 0.25, 1e-15);
}

TEST(Wedge, PublishedConstants) {
  const auto c = published_wedge_constants();
  EXPECT_EQ(c.single_wedge, 0.655940);
  EXPECT_EQ(c.double_wedge, 0.736824);
  EXPECT_LT(c.single_wedge, c.double_wedge);
  EXPECT_LT(c.double_wedge, c.old_triple_wedge);
  EXPECT_EQ(c.old_triple_wedge, 0.967820);
}

TEST(Wedge, KWedge) {
  EXPECT_NEAR(k_wedge_bound(3, 0.730822), 0.692466, 1e-12);
  EXPECT_EQ(k_wedge_bound(3, 0.5), 0.0);
  EXPECT_NEAR(k_wedge_bound(3, upper_bound_p3_closed().value), triple_wedge_bounds(0.7, upper_bound_p3_closed().value).second,
              1e-15);
  EXPECT_NEAR(k_wedge_bound(5, 0.6554678480), 0.777339240, 1e-9);
  EXPECT_THROW(k_wedge_bound(4, 0.6), ValidationError);
}

TEST(Wedge, KindNames) {
  EXPECT_EQ(to_string(WedgeKind::Triple), "triple");
  EXPECT_EQ(to_string(WedgeKind::KWedge), "k_wedge");
}
