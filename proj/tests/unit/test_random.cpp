#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "revive/random.hpp"

namespace revive {
namespace {

// Known-answer vectors from the Random123 distribution (philox4x32_10).
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomStream, StreamsAndSeedsDiffer) {
  RandomStream a(42, 7);
  RandomStream b(42, 8);
  RandomStream c(43, 7);
  const auto x = a.next_u64();
  EXPECT_NE(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(RandomStream, UniformRangeAndMoments) {
  RandomStream s(1, 0);
  double sum = 0.0;
  constexpr int kN = 20000;
  for (int i = 0; i < kN; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / kN, 0.5, 0.01);
}

TEST(RandomStream, NormalMoments) {
  RandomStream s(2, 0);
  double sum = 0.0;
  double sq = 0.0;
  constexpr int kN = 20000;
  for (int i = 0; i < kN; ++i) {
    const double z = s.normal();
    ASSERT_TRUE(std::isfinite(z));
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / kN, 0.0, 0.03);
  EXPECT_NEAR(sq / kN, 1.0, 0.04);
}

TEST(RandomStream, UnitVectorAndOrthogonal) {
  RandomStream s(3, 0);
  EXPECT_NEAR(s.unit_vector(17).norm(), 1.0, 1e-14);
  const Eigen::MatrixXd q = s.orthogonal(9);
  EXPECT_LT((q.transpose() * q - Eigen::MatrixXd::Identity(9, 9)).norm(), 1e-12);
}

TEST(StreamId, TagsSeparateNamespaces) {
  std::set<std::uint64_t> ids;
  for (auto tag : {StreamTag::kBaseMatrix, StreamTag::kEdit, StreamTag::kProbe}) {
    for (std::uint64_t c = 0; c < 4; ++c) ids.insert(stream_id(tag, c));
  }
  EXPECT_EQ(ids.size(), 12u);
  EXPECT_EQ(stream_id(StreamTag::kEdit, 5) >> 56, 2u);
}

}  // namespace
}  // namespace revive
