#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "revive/errors.hpp"
#include "revive/spectral_metrics.hpp"

namespace revive {
namespace {

using testing::random_matrix;

TEST(LowRankSimilarity, SelfIsExactlyOne) {
  std::mt19937_64 gen(51);
  const Matrix w = random_matrix(gen, 12, 8);
  EXPECT_EQ(low_rank_similarity(w, w), 1.0);
}

TEST(LowRankSimilarity, NegationIsMinusOne) {
  std::mt19937_64 gen(52);
  const Matrix w = random_matrix(gen, 9, 9);
  EXPECT_NEAR(low_rank_similarity(w, -w), -1.0, 1e-12);
}

TEST(LowRankSimilarity, SymmetricAndScaleInvariant) {
  std::mt19937_64 gen(53);
  const Matrix a = random_matrix(gen, 10, 7);
  const Matrix b = a + random_matrix(gen, 10, 7, 0.3);
  EXPECT_NEAR(low_rank_similarity(a, b, 0.3), low_rank_similarity(b, a, 0.3), 1e-12);
  EXPECT_NEAR(low_rank_similarity(a, 4.0 * b, 0.3), low_rank_similarity(a, b, 0.3), 1e-12);
}

TEST(LowRankSimilarity, MatchesExplicitCosine) {
  std::mt19937_64 gen(54);
  const Matrix a = random_matrix(gen, 8, 6);
  const Matrix b = a + random_matrix(gen, 8, 6, 0.5);
  const double fraction = 0.4;
  // Independent reconstruction: leading k terms of the triple sum.
  auto truncated = [&](const Matrix& m) {
    const SvdFactorization f = svd(m);
    const std::vector<double> s(f.singular_values().begin(), f.singular_values().end());
    const std::size_t k = testing::brute_force_k(s, fraction);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(8, 6);
    for (std::size_t i = 0; i < k; ++i) out += f.sigma(i) * f.left_vector(i) * f.right_vector(i).transpose();
    return out;
  };
  const Eigen::MatrixXd ra = truncated(a);
  const Eigen::MatrixXd rb = truncated(b);
  const double want = testing::entrywise_inner(ra, rb) / (ra.norm() * rb.norm());
  EXPECT_NEAR(low_rank_similarity(a, b, fraction), want, 1e-12);
}

TEST(LowRankSimilarity, Errors) {
  const Matrix w = Matrix::identity(3);
  EXPECT_THROW(low_rank_similarity(w, Matrix(3, 3)), UndefinedMetricError);
  EXPECT_THROW(low_rank_similarity(w, Matrix(3, 2)), ArgumentError);
  EXPECT_THROW(low_rank_similarity(w, w, 0.0), ArgumentError);
  EXPECT_THROW(low_rank_similarity(w, w, 1.5), ArgumentError);
}

TEST(SingularVectorSimilarity, PermutedSpectrumFindsRotatedDirection) {
  const std::vector<double> base{5, 4, 3, 2, 1};
  const std::vector<double> permuted{1, 2, 5, 4, 3};
  const SvdFactorization b = svd(Matrix::diagonal(base));
  const SvdFactorization c = svd(Matrix::diagonal(permuted));
  const std::vector<std::size_t> tracked{0, 1};
  const auto rows = singular_vector_similarity(b, c, tracked);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].argmax, 2u);
  EXPECT_NEAR(rows[0].max, 1.0, 1e-14);
  EXPECT_EQ(rows[1].argmax, 3u);
  EXPECT_TRUE(rows[0].reliable);
}

TEST(SingularVectorSimilarity, SelfIsIdentity) {
  std::mt19937_64 gen(55);
  const SvdFactorization f = svd(random_matrix(gen, 64, 64));
  const std::vector<std::size_t> tracked{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  for (Side side : {Side::input, Side::output}) {
    const auto rows = singular_vector_similarity(f, f, tracked, side);
    for (std::size_t t = 0; t < tracked.size(); ++t) {
      EXPECT_EQ(rows[t].argmax, t);
      EXPECT_NEAR(rows[t].max, 1.0, 1e-12);
      for (std::size_t j = 0; j < rows[t].similarities.size(); ++j) {
        if (j != t) EXPECT_LT(rows[t].similarities[j], 1e-10);
      }
    }
  }
}

TEST(SingularVectorSimilarity, DegenerateDirectionFlagged) {
  const std::vector<double> d{3, 2, 2, 1};
  const SvdFactorization f = svd(Matrix::diagonal(d));
  const std::vector<std::size_t> tracked{0, 1, 2};
  const auto rows = singular_vector_similarity(f, f, tracked);
  EXPECT_TRUE(rows[0].reliable);
  EXPECT_FALSE(rows[1].reliable);
  EXPECT_FALSE(rows[2].reliable);
  const std::vector<std::size_t> bad{4};
  EXPECT_THROW(singular_vector_similarity(f, f, bad), ArgumentError);
}

TEST(Trajectory, ReportsPerSnapshot) {
  std::mt19937_64 gen(56);
  const Matrix w0 = random_matrix(gen, 10, 8);
  const std::vector<Matrix> snaps{w0, w0, w0 + random_matrix(gen, 10, 8, 0.1)};
  const auto reports = analyze_trajectory(snaps, 0.1, 3);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].round_index, 1u);
  EXPECT_EQ(reports[0].ls, 1.0);
  EXPECT_EQ(reports[0].frobenius_distance, 0.0);
  EXPECT_EQ(reports[0].ss_rows.size(), 3u);
  EXPECT_NEAR(reports[0].ss_min_max(), 1.0, 1e-12);
  EXPECT_EQ(reports[1].energy_profile.size(), 8u);
  EXPECT_NEAR(reports[1].frobenius_distance, (snaps[2] - w0).frobenius_norm(), 1e-15);
}

TEST(Trajectory, TrackedCountClampedToRank) {
  const TrajectoryAnalyzer a(Matrix::identity(4), 0.5, 100);
  EXPECT_EQ(a.tracked_count(), 4u);
}

TEST(Trajectory, Errors) {
  const std::vector<Matrix> one{Matrix::identity(3)};
  EXPECT_THROW(analyze_trajectory(one), ArgumentError);
  const std::vector<Matrix> mismatch{Matrix::identity(3), Matrix(3, 2)};
  EXPECT_THROW(analyze_trajectory(mismatch), ArgumentError);
}

}  // namespace
}  // namespace revive
