#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "sblab/rng.hpp"

using sblab::RngStream;

TEST(Philox, KnownAnswerZero) {
  auto const out = sblab::philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  auto const out = sblab::philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                        {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  auto const out = sblab::philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                        {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RngStream, ReproducibleAcrossInstances) {
  RngStream a(42, sblab::stream_id_for(sblab::StreamPurpose::kTest, 3));
  RngStream b(42, sblab::stream_id_for(sblab::StreamPurpose::kTest, 3));
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64()) << "draw " << i;
}

TEST(RngStream, StreamsAndSeedsDiffer) {
  RngStream a(42, sblab::stream_id_for(sblab::StreamPurpose::kTest, 3));
  RngStream b(42, sblab::stream_id_for(sblab::StreamPurpose::kTest, 4));
  RngStream c(43, sblab::stream_id_for(sblab::StreamPurpose::kTest, 3));
  int same_b = 0, same_c = 0;
  for (int i = 0; i < 1000; ++i) {
    auto const x = a.next_u64();
    same_b += x == b.next_u64();
    same_c += x == c.next_u64();
  }
  EXPECT_EQ(same_b, 0);
  EXPECT_EQ(same_c, 0);
}

TEST(RngStream, StreamIdNamespaces) {
  using sblab::StreamPurpose;
  using sblab::stream_id_for;
  EXPECT_NE(stream_id_for(StreamPurpose::kTail, 0), stream_id_for(StreamPurpose::kAudit, 0));
  EXPECT_EQ(stream_id_for(StreamPurpose::kTail, 5) >> 56, 1u);
}

TEST(RngStream, UniformIntRangeAndBalance) {
  RngStream r(7, 0);
  std::vector<int> counts(6, 0);
  int const draws = 60000;
  for (int i = 0; i < draws; ++i) {
    auto const k = r.uniform_int(6);
    ASSERT_LT(k, 6u);
    ++counts[k];
  }
  // Each count is Binomial(60000, 1/6): sd about 91.
  for (int c : counts) EXPECT_NEAR(c, draws / 6, 5 * 92);
}

TEST(RngStream, UniformBounds) {
  RngStream r(9, 1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double const u = r.uniform();
    double const v = r.uniform_pos();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 5 * 0.2887 / std::sqrt(100000.0));
}

TEST(RngStream, BernoulliThresholdExact) {
  EXPECT_EQ(RngStream::bernoulli_threshold(0.5), 1ULL << 63);
  EXPECT_EQ(RngStream::bernoulli_threshold(0.25), 1ULL << 62);
  RngStream r(1, 2);
  std::vector<std::uint8_t> bits(64000);
  r.fill_bernoulli(bits, 0.5);
  long ones = 0;
  for (auto b : bits) {
    ASSERT_LE(b, 1);
    ones += b;
  }
  EXPECT_NEAR(ones, 32000, 5 * 127);
}

TEST(RngStream, DistributionMeans) {
  RngStream r(11, 3);
  int const n = 200000;
  double g = 0, pois = 0, gam = 0, norm = 0;
  for (int i = 0; i < n; ++i) {
    g += static_cast<double>(r.geometric(0.25));
    pois += static_cast<double>(r.poisson(4.0));
    gam += r.gamma(2.0, 1.5);
    norm += r.standard_normal();
  }
  EXPECT_NEAR(g / n, 3.0, 5 * std::sqrt(12.0 / n));
  EXPECT_NEAR(pois / n, 4.0, 5 * std::sqrt(4.0 / n));
  EXPECT_NEAR(gam / n, 3.0, 5 * std::sqrt(4.5 / n));
  EXPECT_NEAR(norm / n, 0.0, 5 * std::sqrt(1.0 / n));
}
