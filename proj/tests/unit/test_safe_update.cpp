#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "revive/errors.hpp"
#include "revive/safe_update.hpp"
#include "revive/spectral_basis.hpp"

namespace revive {
namespace {

using testing::random_matrix;

TEST(FilterUpdate, TauZeroIsExactCopy) {
  std::mt19937_64 gen(41);
  const Matrix w = random_matrix(gen, 8, 6);
  const Matrix delta = random_matrix(gen, 8, 6);
  const FilterOutcome out = filter_update(w, delta, 0.0);
  EXPECT_TRUE(out.safe_delta == delta);
  EXPECT_EQ(out.k_used, 0u);
  EXPECT_EQ(out.removed_energy_fraction, 0.0);
}

TEST(FilterUpdate, FullRankRemovesEverything) {
  std::mt19937_64 gen(42);
  const Matrix w = random_matrix(gen, 6, 6);
  const Matrix delta = random_matrix(gen, 6, 6);
  const FilterOutcome out = filter_update(w, delta, 0.999999);
  ASSERT_EQ(out.k_used, 6u);
  EXPECT_EQ(out.safe_delta.frobenius_norm(), 0.0);
  EXPECT_EQ(out.removed_energy_fraction, 1.0);
}

TEST(FilterUpdate, MatchesCoefficientZeroing) {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix w = random_matrix(gen, 9, 7);
    const Matrix delta = random_matrix(gen, 9, 7);
    for (double tau : {0.05, 0.1, 0.3, 0.6}) {
      const FilterOutcome out = filter_update(w, delta, tau);
      const Eigen::MatrixXd oracle = testing::coefficient_zeroing_filter(delta.values(), svd(w), out.k_used);
      EXPECT_LT(testing::relative_error(out.safe_delta.values(), oracle, delta.frobenius_norm()), 1e-10);
    }
  }
}

TEST(FilterUpdate, IdempotentAndLinear) {
  std::mt19937_64 gen(44);
  const Matrix w = random_matrix(gen, 10, 8);
  const SvdFactorization f = svd(w);
  const DominantSubspace d = select_k(f, 0.2);
  const Matrix a = random_matrix(gen, 10, 8);
  const Matrix b = random_matrix(gen, 10, 8);
  const Matrix fa = filter_with_basis(f, d, a).safe_delta;
  const Matrix ffa = filter_with_basis(f, d, fa).safe_delta;
  EXPECT_LT((ffa - fa).frobenius_norm(), 1e-12 * a.frobenius_norm());
  const Matrix fb = filter_with_basis(f, d, b).safe_delta;
  const Matrix fab = filter_with_basis(f, d, 3.0 * a + (-2.0) * b).safe_delta;
  EXPECT_LT((fab - (3.0 * fa + (-2.0) * fb)).frobenius_norm(), 1e-12 * fab.frobenius_norm() + 1e-12);
  EXPECT_LE(fa.frobenius_norm(), a.frobenius_norm());
}

TEST(FilterUpdate, ProtectedCoefficientsVanish) {
  std::mt19937_64 gen(45);
  const Matrix w = random_matrix(gen, 12, 9);
  const Matrix delta = random_matrix(gen, 12, 9);
  const FilterOutcome out = filter_update(w, delta, 0.3);
  ASSERT_GT(out.k_used, 0u);
  const SpectralCoefficients c = decompose(out.safe_delta, svd(w));
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      if (i < out.k_used || j < out.k_used) EXPECT_LT(std::abs(c(i, j)), 1e-9);
    }
  }
}

TEST(FilterUpdate, LeadingOuterProductIsRemoved) {
  std::mt19937_64 gen(46);
  const Matrix w = random_matrix(gen, 7, 5);
  const SvdFactorization f = svd(w);
  const Matrix delta(Eigen::MatrixXd(f.left_vector(0) * f.right_vector(0).transpose()));
  const FilterOutcome out = filter_update(w, delta, 0.1);
  EXPECT_LT(out.safe_delta.frobenius_norm(), 1e-12);
  EXPECT_NEAR(out.removed_energy_fraction, 1.0, 1e-12);
}

TEST(FilterUpdate, DiagonalBlockEdit) {
  // σ = (3,2,1): k = 1 at τ = 0.1, so the (0,0) entry is untouchable while the
  // lower block passes through unchanged.
  const std::vector<double> d{3, 2, 1};
  const Matrix w = Matrix::diagonal(d);
  const std::vector<double> delta_data{0.5, 0.5, 0.0, 0.5, 0.25, -0.1, 0.0, 0.3, 0.2};
  const Matrix delta = Matrix::from_row_major(3, 3, delta_data);
  const EditResult r = apply_edit(w, delta, 0.1);
  EXPECT_EQ(r.outcome.k_used, 1u);
  EXPECT_NEAR(r.updated(0, 0), 3.0, 1e-15);
  EXPECT_NEAR(r.updated(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(r.updated(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(r.updated(1, 1), 2.25, 1e-15);
  EXPECT_NEAR(r.updated(2, 1), 0.3, 1e-15);
}

TEST(FilterUpdate, PreservesProtectedTriples) {
  std::mt19937_64 gen(47);
  const Matrix w = random_matrix(gen, 16, 12);
  const Matrix delta = random_matrix(gen, 16, 12, 0.5);
  const SvdFactorization f = svd(w);
  const EditResult r = apply_edit(w, delta, 0.1);
  for (std::size_t i = 0; i < r.outcome.k_used; ++i) {
    const Eigen::VectorXd got = r.updated.values() * f.right_vector(i);
    EXPECT_LT((got - f.sigma(i) * f.left_vector(i)).norm(), 1e-10 * f.sigma(i));
    const Eigen::VectorXd got_t = r.updated.values().transpose() * f.left_vector(i);
    EXPECT_LT((got_t - f.sigma(i) * f.right_vector(i)).norm(), 1e-10 * f.sigma(i));
  }
}

TEST(FilterWithBasis, RejectsForeignSubspace) {
  std::mt19937_64 gen(48);
  const Matrix w = random_matrix(gen, 5, 4);
  const SvdFactorization f = svd(w);
  const SvdFactorization g = svd(w);
  const DominantSubspace d = select_k(g, 0.1);
  EXPECT_THROW(filter_with_basis(f, d, w), ArgumentError);
  EXPECT_THROW(filter_with_basis(g, d, Matrix(4, 5)), ArgumentError);
  EXPECT_THROW(filter_update(w, Matrix(5, 5), 0.1), ArgumentError);
  EXPECT_THROW(filter_update(w, w, 1.0), ArgumentError);
}

}  // namespace
}  // namespace revive
