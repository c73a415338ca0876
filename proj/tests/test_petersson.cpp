#include <gtest/gtest.h>

#include "skl/petersson.hpp"

#include <map>

using skl::PeterssonCheck;

namespace {
const PeterssonCheck& check(int k) {
  static std::map<int, PeterssonCheck> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, PeterssonCheck(k)).first;
  return it->second;
}
}  // namespace

TEST(Petersson, OmegaFromSymmetricSquare) {
  // omega for Delta from <Delta, Delta> = 1.035362056804320922e-6:
  // (4 pi)^11 / 10! * <Delta, Delta>
  double w = std::pow(4 * skl::as::kPi, 11) / 3628800.0 * 1.035362056804320922e-6;
  EXPECT_NEAR(check(12).omegas()[0].convert_to<double>() / w, 1, 1e-12);
}

TEST(Petersson, TwoSidedWeights12And22) {
  for (int k : {12, 22}) {
    auto v = check(k).run(6, 10000);
    EXPECT_EQ(v.size(), 21u);
    for (auto& r : v) {
      EXPECT_TRUE(r.agrees(1e-8)) << k << " " << r.m << " " << r.n << " " << r.diff();
      EXPECT_LT(r.tail, 1e-15);
      EXPECT_LT(r.lhs_budget, 1e-10);
    }
  }
}

TEST(Petersson, Examples) {
  auto a = check(12).check(1, 1, 10000);
  EXPECT_NEAR(a.lhs, a.rhs, 1e-8);
  // the Kloosterman series is not small against delta here: 1/omega > 1
  EXPECT_GT(a.lhs, 1);
  auto b = check(12).check(2, 3, 10000);
  EXPECT_NEAR(b.lhs, b.rhs, 1e-8);
  auto c = check(22).check(2, 2, 10000);
  EXPECT_NEAR(c.lhs, c.rhs, 1e-8);
  // dimension one: lhs is lambda(2)^2 / omega
  EXPECT_EQ(check(22).dimension(), 1u);
}

TEST(Petersson, TwoDimensionalSpace) {
  EXPECT_EQ(check(24).dimension(), 2u);
  for (auto& r : check(24).run(4, 2000)) EXPECT_TRUE(r.agrees(1e-8)) << r.m << " " << r.n;
}

TEST(Petersson, TruncationShowsUp) {
  // cutting the c-series short leaves a visible discrepancy
  auto r = check(12).check(6, 6, 3);
  EXPECT_GT(r.diff(), 1e-6);
  EXPECT_GT(r.tail, r.diff());
}

TEST(Petersson, Arguments) {
  EXPECT_THROW(PeterssonCheck(11), std::invalid_argument);
  EXPECT_THROW(check(12).run(0, 10), std::invalid_argument);
}
