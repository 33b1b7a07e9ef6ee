#include "phasync/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phasync/error.hpp"
#include "phasync/estimators.hpp"
#include "support/oracles.hpp"

namespace phasync::oracle {
namespace {

Observation noiseless(const PhaseVector& z) {
  return sample_observation(z, {z.size(), 1.0, 0.0, 0});
}

TEST(GridMleTest, RecoversOnGridTruth) {
  constexpr double kStep = 2.0 * std::numbers::pi / 16.0;
  const PhaseVector z = PhaseVector::from_angles(std::vector<double>{0.0, 3 * kStep, 10 * kStep});
  const GridResult r = grid_mle(noiseless(z), GridSpec{16, true, 1});
  EXPECT_EQ(r.indices, (std::vector<int>{0, 3, 10}));
  EXPECT_LT(loss(r.estimate, z), 1e-20);
  EXPECT_NEAR(r.objective, 6.0, 1e-12);
}

TEST(GridMleTest, DisconnectedCoordinateTakesFirstGridPoint) {
  HermitianMatrix mask(3), data(3);
  mask.set(0, 1, 1.0);
  data.set(0, 1, std::polar(1.0, 0.5 * std::numbers::pi));
  const GridResult r = grid_mle(Observation{mask, data}, GridSpec{8, true, 1});
  EXPECT_EQ(r.indices[2], 0);
  EXPECT_EQ(r.indices[1], 6);
  EXPECT_NEAR(r.objective, 2.0, 1e-12);
}

TEST(GridMleTest, Guard) {
  const Observation obs = noiseless(PhaseVector::ones(5));
  EXPECT_EQ(GridSpec{}.grid_size(5), 1e8);
  EXPECT_EQ((GridSpec{100, false, 1}.grid_size(5)), 1e10);
  try {
    grid_mle(obs, GridSpec{2000, true, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGuardViolation);
  }
  EXPECT_THROW(grid_mle(obs, GridSpec{7, true, 1}), Error);
}

TEST(GridMleTest, ThreadCountDoesNotChangeResult) {
  const ModelParams params{4, 1.0, 0.5, 9};
  const Observation obs = sample_observation(sample_truth(params), params);
  const GridResult one = grid_mle(obs, GridSpec{48, true, 1});
  const GridResult three = grid_mle(obs, GridSpec{48, true, 3});
  EXPECT_EQ(one.indices, three.indices);
  EXPECT_EQ(one.objective, three.objective);
}

TEST(GridMleTest, MatchesLoopObjective) {
  const ModelParams params{4, 1.0, 0.3, 10};
  const Observation obs = sample_observation(sample_truth(params), params);
  const GridResult r = grid_mle(obs, GridSpec{32, false, 1});
  EXPECT_NEAR(r.objective,
              testing::loop_objective(obs.data, {r.estimate.entries().begin(), r.estimate.entries().end()}),
              1e-12);
}

TEST(JacobiEigTest, DiagonalMatrix) {
  HermitianMatrix m(4);
  const double d[] = {2.0, -1.0, 5.0, 0.5};
  for (std::size_t j = 0; j < 4; ++j) m.set(j, j, d[j]);
  const auto pairs = jacobi_eig(m);
  const double sorted[] = {5.0, 2.0, 0.5, -1.0};
  const std::size_t where[] = {2, 0, 3, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(pairs[i].value, sorted[i]);
    EXPECT_NEAR(std::abs(pairs[i].vector[where[i]]), 1.0, 1e-15);
  }
}

TEST(JacobiEigTest, RankOne) {
  const PhaseVector z = testing::random_phases(6, 1);
  HermitianMatrix m(6);
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t k = j; k < 6; ++k) m.set(j, k, j == k ? cplx(1.0) : z[j] * std::conj(z[k]));
  const auto pairs = jacobi_eig(m);
  EXPECT_NEAR(pairs[0].value, 6.0, 1e-12);
  for (std::size_t i = 1; i < 6; ++i) EXPECT_NEAR(pairs[i].value, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inner(pairs[0].vector, z.entries())), std::sqrt(6.0), 1e-12);
}

TEST(JacobiEigTest, RandomHermitianDecomposition) {
  const HermitianMatrix m = testing::random_hermitian(8, 3);
  const auto pairs = jacobi_eig(m);
  double tr = 0.0, sum = 0.0;
  for (std::size_t j = 0; j < 8; ++j) tr += m(j, j).real();
  for (const EigPair& p : pairs) sum += p.value;
  EXPECT_NEAR(tr, sum, 1e-10);
  for (std::size_t i = 0; i + 1 < 8; ++i) EXPECT_GE(pairs[i].value, pairs[i + 1].value);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t k = 0; k < 8; ++k)
      EXPECT_NEAR(std::abs(inner(pairs[i].vector, pairs[k].vector)), i == k ? 1.0 : 0.0, 1e-12);
  double recon = 0.0;
  for (std::size_t j = 0; j < 8; ++j)
    for (std::size_t k = 0; k < 8; ++k) {
      cplx s = 0.0;
      for (const EigPair& p : pairs) s += p.value * p.vector[j] * std::conj(p.vector[k]);
      recon += std::norm(m(j, k) - s);
    }
  EXPECT_LT(std::sqrt(recon), 1e-11);
  for (std::size_t i = 0; i < 8; ++i) {
    const auto mv = testing::naive_matvec(m, pairs[i].vector);
    for (std::size_t j = 0; j < 8; ++j) EXPECT_LT(std::abs(mv[j] - pairs[i].value * pairs[i].vector[j]), 1e-10);
  }
}

TEST(JacobiEigTest, Guards) {
  EXPECT_THROW(jacobi_eig(HermitianMatrix(513)), Error);
  EXPECT_THROW(jacobi_eig(HermitianMatrix(3), 0.0), Error);
}

class McFisherTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    base_ = new Mat2(mc_fisher(0.5, 0.5, {100, 1.0, 1.0, 0}, 100000, 7));
  }
  static void TearDownTestSuite() { delete base_; }
  static Mat2* base_;
};
Mat2* McFisherTest::base_ = nullptr;

TEST_F(McFisherTest, DiagonalMatchesClosedForm) {
  const FisherComponents f = fisher_blocks(0.5, 0.5, {100, 1.0, 1.0, 0});
  const Mat2 total = f.b1 + f.b2;
  for (int i = 0; i < 2; ++i) EXPECT_NEAR((*base_)[i][i] / total[i][i], 1.0, 0.05);
}

TEST_F(McFisherTest, Symmetric) {
  EXPECT_LT(std::abs((*base_)[0][1] - (*base_)[1][0]) / std::sqrt(frobenius_squared(*base_)), 0.02);
}

TEST_F(McFisherTest, InverseNoiseScaling) {
  const Mat2 noisy = mc_fisher(0.5, 0.5, {100, 1.0, std::sqrt(2.0), 0}, 100000, 8);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(noisy[i][i] / (*base_)[i][i], 0.5, 0.05);
}

TEST_F(McFisherTest, DeterministicAndGuarded) {
  EXPECT_EQ(mc_fisher(0.45, 0.55, {20, 0.5, 1.0, 0}, 10000, 3),
            mc_fisher(0.45, 0.55, {20, 0.5, 1.0, 0}, 10000, 3));
  EXPECT_THROW(mc_fisher(0.5, 0.5, {100, 1.0, 1.0, 0}, 9999, 3), Error);
}

}  // namespace
}  // namespace phasync::oracle
