#include <msrlab/bounds.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace msrlab;

TEST(Bounds, WorkedValues) {
  EXPECT_EQ(bound_quadratic(2), 4u);
  EXPECT_EQ(bound_logsq(8192, 2), 365u);
  EXPECT_EQ(bound_logsq(2, 2), 5u);
  EXPECT_EQ(bound_logsq(4, 3), 17u);
  EXPECT_EQ(bound_linear_r2(2), 8u);
  EXPECT_EQ(bound_linear_r2(8192), 32768u);
  EXPECT_EQ(floor_log_delta(8192, 2), 13u);
}

TEST(Bounds, FloorLogAgreesWithDirectPowers) {
  for (std::uint64_t r = 2; r <= 6; ++r)
    for (std::uint64_t lg = 1; lg <= 12; ++lg) {
      const std::uint64_t ell = std::uint64_t{1} << lg;
      // largest e with r^e <= ell (r-1)^e, by direct 128-bit powers
      unsigned e = 0;
      while (true) {
        unsigned __int128 a = 1, b = ell;
        for (unsigned x = 0; x <= e; ++x) {
          a *= r;
          b *= (r - 1);
        }
        if (a > b) break;
        ++e;
      }
      EXPECT_EQ(floor_log_delta(ell, r), e) << "ell=" << ell << " r=" << r;
    }
}

TEST(Bounds, Errors) {
  EXPECT_THROW(bound_linear_r2(6), Error);
  try {
    bound_linear_r2(6);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPowerOfTwo);
  }
  EXPECT_THROW(bound_logsq(6, 2), Error);
  EXPECT_THROW(bound_logsq(8, 1), Error);
  EXPECT_THROW(bound_quadratic(0), Error);
}

TEST(Bounds, KnownAchievable) {
  EXPECT_DOUBLE_EQ(known_achievable(8, 2), 9.0);
  EXPECT_DOUBLE_EQ(known_achievable(9, 3), 8.0);
  EXPECT_NEAR(known_achievable(6, 2), 3.0 * std::log2(6.0), 1e-9);
}

TEST(Bounds, ReportFields) {
  const auto rep = bound_report(8192, 2, 10);
  EXPECT_EQ(rep.quadratic, 8192u * 8192u);
  EXPECT_EQ(rep.linear_r2, 32768u);
  EXPECT_EQ(rep.logsq, 365u);
  EXPECT_EQ(rep.bandwidth, 9u * 4096u);
  const auto odd = bound_report(6, 3);
  EXPECT_FALSE(odd.linear_r2.has_value());
  EXPECT_FALSE(odd.logsq.has_value());
  EXPECT_EQ(odd.quadratic, 36u);
}

TEST(Bounds, ConsistencyAssert) {
  const auto rep = bound_report(2, 2);
  EXPECT_TRUE(consistency_assert(4, rep));
  EXPECT_TRUE(consistency_assert(3, rep, KCount::SystemSize));
  try {
    consistency_assert(4, rep, KCount::SystemSize, "{\"w\":1}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundViolated);
    EXPECT_EQ(e.payload(), "{\"w\":1}");
  }
  EXPECT_THROW(consistency_assert(6, rep), Error);
}
