#include "phasync/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phasync/error.hpp"
#include "support/oracles.hpp"

namespace phasync {
namespace {

using testing::random_phases;

TEST(PhaseVectorTest, RejectsNonUnitEntries) {
  try {
    PhaseVector({1.0, {0.0, 1.0}, 1.01});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotUnitModulus);
  }
}

TEST(ModelParamsTest, Validation) {
  EXPECT_NO_THROW((ModelParams{2, 1.0, 0.0, 0}.validate()));
  EXPECT_THROW((ModelParams{1, 1.0, 0.0, 0}.validate()), Error);
  EXPECT_THROW((ModelParams{5, 0.0, 1.0, 0}.validate()), Error);
  EXPECT_THROW((ModelParams{5, 1.5, 1.0, 0}.validate()), Error);
  EXPECT_THROW((ModelParams{5, 0.5, -1.0, 0}.validate()), Error);
  EXPECT_DOUBLE_EQ((ModelParams{5, 0.25, 2.0, 0}.theory_risk()), 8.0);
}

TEST(SampleTruthTest, FixedGivenIsReturnedUnchanged) {
  const ModelParams params{6, 1.0, 1.0, 3};
  const ComplexVector ones(6, 1.0);
  EXPECT_EQ(sample_truth(params, TruthMode::kFixedGiven, ones), PhaseVector::ones(6));
  const ComplexVector bad{1.0, 1.0, 1.0, 1.0, 1.0, 2.0};
  EXPECT_THROW(sample_truth(params, TruthMode::kFixedGiven, bad), Error);
}

TEST(SampleTruthTest, Deterministic) {
  const ModelParams params{50, 1.0, 1.0, 99};
  EXPECT_EQ(sample_truth(params), sample_truth(params));
  EXPECT_NE(sample_truth(params), sample_truth(ModelParams{50, 1.0, 1.0, 100}));
}

TEST(SampleTruthTest, UniformPhasesAverageOut) {
  // |mean| has standard deviation 1/sqrt(n) = 0.01; 0.05 is a five-sigma band.
  const PhaseVector z = sample_truth({10000, 1.0, 1.0, 5});
  cplx mean = 0.0;
  for (const cplx& x : z.entries()) mean += x;
  EXPECT_LT(std::abs(mean / 10000.0), 0.05);
}

TEST(SampleObservationTest, NoiselessFullyObservedIsRankOne) {
  const ModelParams params{12, 1.0, 0.0, 1};
  const PhaseVector z = sample_truth(params);
  const Observation obs = sample_observation(z, params);
  EXPECT_NO_THROW(obs.validate());
  for (std::size_t j = 0; j < 12; ++j)
    for (std::size_t k = 0; k < 12; ++k)
      EXPECT_EQ(obs.data(j, k), j == k ? cplx(0.0) : (j < k ? z[j] * std::conj(z[k])
                                                             : std::conj(z[k] * std::conj(z[j]))));
}

TEST(SampleObservationTest, NoiseVarianceMatchesComplexGaussian) {
  const ModelParams params{2000, 1.0, 1.0, 2};
  const PhaseVector z = sample_truth(params);
  const Observation obs = sample_observation(z, params);
  double sum = 0.0, sum_sq = 0.0, count = 0.0;
  for (std::size_t j = 0; j < 2000; ++j)
    for (std::size_t k = j + 1; k < 2000; ++k) {
      const double r = (obs.data(j, k) - z[j] * std::conj(z[k])).real();
      sum += r;
      sum_sq += r * r;
      count += 1.0;
    }
  const double mean = sum / count;
  const double var = sum_sq / count - mean * mean;
  EXPECT_GE(var, 0.48);
  EXPECT_LE(var, 0.52);
}

TEST(SampleObservationTest, MaskFrequencyConcentrates) {
  const ModelParams params{2000, 0.3, 1.0, 3};
  const Observation obs = sample_observation(sample_truth(params), params);
  double observed = 0.0, pairs = 0.0;
  for (std::size_t j = 0; j < 2000; ++j)
    for (std::size_t k = j + 1; k < 2000; ++k) {
      observed += obs.mask(j, k).real();
      pairs += 1.0;
    }
  EXPECT_GE(observed / pairs, 0.29);
  EXPECT_LE(observed / pairs, 0.31);
}

TEST(SampleObservationTest, InvariantsAndBitDeterminism) {
  const ModelParams params{40, 0.4, 1.3, 17};
  const PhaseVector z = sample_truth(params);
  const Observation a = sample_observation(z, params);
  const Observation b = sample_observation(z, params);
  EXPECT_NO_THROW(a.validate());
  EXPECT_EQ(a.mask, b.mask);
  EXPECT_EQ(a.data, b.data);
  EXPECT_THROW(sample_observation(PhaseVector::ones(39), params), Error);
}

TEST(LossTest, Examples) {
  const PhaseVector z = random_phases(9, 1);
  EXPECT_EQ(loss(z, z), 0.0);

  ComplexVector flipped(z.entries().begin(), z.entries().end());
  flipped[0] = -flipped[0];
  EXPECT_NEAR(loss(PhaseVector(flipped), z), 4.0, 1e-14);

  const PhaseVector ones = PhaseVector::ones(2);
  const PhaseVector one_i(ComplexVector{1.0, {0.0, 1.0}});
  EXPECT_NEAR(loss(ones, one_i), 2.0 * (2.0 - std::sqrt(2.0)), 1e-15);

  EXPECT_THROW(loss(ones, PhaseVector::ones(3)), Error);
}

TEST(LossTest, OneFlippedEntryIsExactlyFourForRealVectors) {
  ComplexVector v(10, 1.0);
  v[0] = -1.0;
  EXPECT_EQ(loss(PhaseVector(v), PhaseVector::ones(10)), 4.0);
}

TEST(LossTest, MatchesScannedMinimisation) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PhaseVector a = random_phases(20, 2 * seed), b = random_phases(20, 2 * seed + 1);
    EXPECT_NEAR(loss(a, b), testing::scanned_loss(a, b), 1e-9);
  }
}

TEST(LossTest, OrthogonalPairHasMaximalLoss) {
  const PhaseVector a = PhaseVector::ones(2);
  const PhaseVector b(ComplexVector{1.0, -1.0});
  EXPECT_EQ(loss(a, b), 4.0);
}

TEST(AlignTest, Examples) {
  const PhaseVector z = random_phases(11, 3);
  EXPECT_EQ(align(z.rotated(-1.0), z), z);
  const PhaseVector rotated = z.rotated(std::polar(1.0, std::numbers::pi / 3.0));
  const PhaseVector back = align(rotated, z);
  for (std::size_t j = 0; j < z.size(); ++j) EXPECT_LT(std::abs(back[j] - z[j]), 1e-12);
}

TEST(AlignTest, ConsistentWithLoss) {
  const PhaseVector a = random_phases(20, 4), b = random_phases(20, 5);
  const PhaseVector aligned = align(a, b);
  double sq = 0.0;
  for (std::size_t j = 0; j < 20; ++j) sq += std::norm(aligned[j] - b[j]);
  EXPECT_NEAR(sq, loss(a, b), 1e-10);
}

TEST(AlignTest, OrthogonalEstimateIsAnError) {
  try {
    align(PhaseVector::ones(2), PhaseVector(ComplexVector{1.0, -1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
    EXPECT_STREQ(e.what(), "alignment undefined: orthogonal estimate");
  }
}

TEST(GramDistanceTest, Examples) {
  const PhaseVector z = random_phases(10, 6);
  EXPECT_EQ(gram_distance(z, z), 0.0);

  ComplexVector v(10, 1.0);
  v[0] = -1.0;
  const PhaseVector flipped(v), ones = PhaseVector::ones(10);
  const double g = gram_distance(flipped, ones);
  EXPECT_DOUBLE_EQ(g, 72.0);
  const double l = loss(flipped, ones);
  EXPECT_LE(10.0 * l, g);
  EXPECT_LE(g, 20.0 * l);

  const PhaseVector a = random_phases(15, 7), b = random_phases(15, 8);
  EXPECT_NEAR(gram_distance(a, b), testing::entrywise_gram(a, b), 1e-10);
}

// Property suite over random pairs: range, symmetry, gauge invariance and
// the n*loss <= gram <= 2n*loss sandwich.
TEST(LossPropertyTest, RandomPairs) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> dim(2, 40);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = static_cast<std::size_t>(dim(gen));
    const PhaseVector a = random_phases(n, gen()), b = random_phases(n, gen());
    const double nn = static_cast<double>(n);
    const double l = loss(a, b);
    ASSERT_GE(l, 0.0);
    ASSERT_LE(l, 2.0 * nn + 1e-12);
    ASSERT_NEAR(l, loss(b, a), 1e-9);
    ASSERT_NEAR(l, loss(a.rotated(std::polar(1.0, angle(gen))), b), 1e-9);
    const double g = gram_distance(a, b);
    ASSERT_LE(nn * l, g + 1e-9);
    ASSERT_LE(g, 2.0 * nn * l + 1e-9);
  }
}

}  // namespace
}  // namespace phasync
