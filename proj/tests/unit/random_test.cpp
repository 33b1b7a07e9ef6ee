#include "phasync/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace phasync {
namespace {

TEST(Xoshiro256Test, SameSeedSameStream) {
  Xoshiro256 a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs = differs || x != c();
  }
  EXPECT_TRUE(differs);
}

TEST(Mix64Test, NeighbouringIndicesGiveDistinctSeeds) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t g = 0; g < 16; ++g)
    for (std::uint64_t t = 0; t < 256; ++t) seen.insert(mix64(7, g, t));
  EXPECT_EQ(seen.size(), 16u * 256u);
  EXPECT_NE(mix64(7, 1, 0), mix64(7, 0, 1));
}

TEST(UniformTest, RangesAreRespected) {
  Xoshiro256 rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = uniform01_open_low(rng);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(ComplexNormalTest, ComponentsHaveVarianceOneHalf) {
  Xoshiro256 rng(3);
  constexpr int kSamples = 400000;
  double sr = 0, si = 0, srr = 0, sii = 0, sri = 0;
  for (int i = 0; i < kSamples; ++i) {
    const auto w = complex_normal(rng);
    sr += w.real();
    si += w.imag();
    srr += w.real() * w.real();
    sii += w.imag() * w.imag();
    sri += w.real() * w.imag();
  }
  // Standard error of a variance estimate is about 0.5*sqrt(2/N) ~ 1.1e-3.
  EXPECT_NEAR(sr / kSamples, 0.0, 6e-3);
  EXPECT_NEAR(si / kSamples, 0.0, 6e-3);
  EXPECT_NEAR(srr / kSamples, 0.5, 6e-3);
  EXPECT_NEAR(sii / kSamples, 0.5, 6e-3);
  EXPECT_NEAR(sri / kSamples, 0.0, 6e-3);
}

TEST(StandardNormalTest, UnitVariance) {
  Xoshiro256 rng(5);
  constexpr int kSamples = 400000;
  double s = 0, ss = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double g = standard_normal(rng);
    s += g;
    ss += g * g;
  }
  EXPECT_NEAR(s / kSamples, 0.0, 8e-3);
  EXPECT_NEAR(ss / kSamples, 1.0, 1.2e-2);
}

}  // namespace
}  // namespace phasync
