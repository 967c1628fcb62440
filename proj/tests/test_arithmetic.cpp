#include <gtest/gtest.h>

#include <cmath>

#include "brute.hpp"
#include "walshprime/arithmetic.hpp"

using namespace walshprime;

namespace {
const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0), l7 = std::log(7.0);

// Lambda(x) by repeated division by the smallest factor.
double lambda_by_division(std::uint64_t x) {
  if (x < 2) return 0.0;
  std::uint64_t p = 2;
  while (x % p != 0) ++p;
  while (x % p == 0) x /= p;
  return x == 1 ? std::log(static_cast<double>(p)) : 0.0;
}
}  // namespace

TEST(Sieve, SmallTables) {
  const auto t3 = sieve_von_mangoldt(3);
  const std::vector<double> expected{0, 0, l2, l3, l2, l5, 0, l7};
  for (std::size_t x = 0; x < 8; ++x) EXPECT_NEAR(t3[x], expected[x], 1e-15) << x;

  const auto t4 = sieve_von_mangoldt(4);
  EXPECT_NEAR(t4[8], l2, 1e-15);
  EXPECT_NEAR(t4[9], l3, 1e-15);
  EXPECT_EQ(t4[15], 0.0);
}

TEST(Sieve, MatchesDivisionBelow2To16) {
  const auto t = sieve_von_mangoldt(16);
  for (std::uint64_t x = 0; x < t.size(); ++x) {
    const double e = lambda_by_division(x);
    ASSERT_EQ(e > 0.0, t[x] > 0.0) << x;
    ASSERT_NEAR(t[x], e, 1e-12) << x;
  }
}

TEST(Sieve, SegmentSizeDoesNotMatter) {
  const auto a = sieve_von_mangoldt(14);
  const auto b = sieve_von_mangoldt(14, SieveOptions{.segment_size = 1000});
  EXPECT_EQ(a.values(), b.values());
}

TEST(Sieve, PsiAt2To20) {
  const auto t = sieve_von_mangoldt(20);
  const double psi = chebyshev_psi(t, t.size() - 1);
  EXPECT_GT(psi / t.size(), 0.99);
  EXPECT_LT(psi / t.size(), 1.01);
}

TEST(Sieve, RejectsMalformedTable) {
  EXPECT_THROW(VonMangoldtTable(CubeVector(2, {0, 1, 0, 0})), Error);
  EXPECT_THROW(VonMangoldtTable(CubeVector(2, {0, 0, -1, 0})), Error);
}

TEST(Psi, HandValues) {
  const auto t = sieve_von_mangoldt(4);
  EXPECT_EQ(chebyshev_psi(t, 1), 0.0);
  EXPECT_NEAR(chebyshev_psi(t, 10), 3 * l2 + 2 * l3 + l5 + l7, 1e-12);
  EXPECT_NEAR(chebyshev_psi(t, 10), 7.832014180505469, 1e-12);
  try {
    chebyshev_psi(t, 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::out_of_range);
  }
}

TEST(PairCorrelation, HandValuesN3) {
  const auto t = sieve_von_mangoldt(3);
  const auto diag = pair_correlation(t, 1, 1);
  EXPECT_EQ(diag.shift, 0);
  EXPECT_NEAR(diag.sum, 2 * l2 * l2 + l3 * l3 + l5 * l5 + l7 * l7, 1e-12);

  // shift +1: pairs (2,3), (3,4), (4,5)
  const auto s1 = pair_correlation(t, 0, 1);
  EXPECT_EQ(s1.shift, 1);
  EXPECT_NEAR(s1.sum, 2 * l2 * l3 + l2 * l5, 1e-12);

  // shift +2: pairs (2,4), (3,5), (5,7)
  const auto s2 = pair_correlation(t, 1, 2);
  EXPECT_EQ(s2.shift, 2);
  EXPECT_NEAR(s2.sum, l2 * l2 + l3 * l5 + l5 * l7, 1e-12);
  EXPECT_NEAR(s2.ratio, s2.sum / 8, 1e-15);
}

TEST(PairCorrelation, NegativeShiftIsReindexedPositive) {
  const auto t = sieve_von_mangoldt(12);
  for (unsigned j = 0; j < 12; ++j)
    for (unsigned k = 0; k < 12; ++k)
      ASSERT_NEAR(pair_correlation(t, j, k).sum, pair_correlation(t, k, j).sum, 1e-9);
}

TEST(PairCorrelation, BruteForceN10) {
  const auto t = sieve_von_mangoldt(10);
  const auto r = pair_correlation(t, 2, 5);
  double acc = 0.0;
  for (std::int64_t x = 1; x < 1024; ++x) {
    const std::int64_t y = x + 28;
    if (y >= 1 && y < 1024) acc += lambda_by_division(x) * lambda_by_division(y);
  }
  EXPECT_NEAR(r.sum, acc, 1e-9);
}

TEST(PairCorrelation, MaxIsOverDistinctPairs) {
  const auto t = sieve_von_mangoldt(10);
  const auto m = max_pair_correlation(t);
  EXPECT_NE(m.j, m.k);
  for (unsigned j = 0; j < 10; ++j)
    for (unsigned k = 0; k < 10; ++k)
      if (j != k) {
        EXPECT_LE(pair_correlation(t, j, k).ratio, m.value.ratio + 1e-15);
      }
}
