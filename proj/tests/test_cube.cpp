#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "walshprime/arithmetic.hpp"
#include "walshprime/cube.hpp"

using namespace walshprime;

namespace {

CubeVector random_vector(unsigned n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  std::vector<double> v(cube_size(n));
  for (double& x : v) x = dist(rng);
  return CubeVector(n, std::move(v));
}

}  // namespace

TEST(Cube, DictatorSpectrum) {
  const auto s = wht_forward(CubeVector(2, {0, 1, 0, 1}));
  EXPECT_DOUBLE_EQ(s[0], 0.5);
  EXPECT_DOUBLE_EQ(s[1], -0.5);
  EXPECT_DOUBLE_EQ(s[2], 0.0);
  EXPECT_DOUBLE_EQ(s[3], 0.0);
}

TEST(Cube, ConstantSpectrum) {
  const auto s = wht_forward(CubeVector(1, {2.5, 2.5}));
  EXPECT_DOUBLE_EQ(s[0], 2.5);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
}

TEST(Cube, VonMangoldtN3MatchesDirectSum) {
  const auto table = sieve_von_mangoldt(3);
  const auto fast = wht_forward(table.values());
  const std::vector<double> f(table.values().values().begin(), table.values().values().end());
  const auto slow = brute::wht(f);
  for (std::size_t S = 0; S < 8; ++S) EXPECT_NEAR(fast[S], slow[S], 1e-12);
}

TEST(Cube, MatchesDirectSumUpToTen) {
  for (unsigned n = 1; n <= 10; ++n) {
    const auto f = random_vector(n, 100 + n);
    const auto fast = wht_forward(f);
    const auto slow = brute::wht({f.values().begin(), f.values().end()});
    for (std::size_t S = 0; S < f.size(); ++S) ASSERT_NEAR(fast[S], slow[S], 1e-12) << "n=" << n;
  }
}

TEST(Cube, InverseOfUnitCoefficientIsConstantOne) {
  Spectrum s(4);
  s[0] = 1.0;
  const auto f = wht_inverse(s);
  for (double v : f.values()) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Cube, RoundTripAndParseval) {
  const auto f = random_vector(16, 7);
  const auto s = wht_forward(f);
  const auto back = wht_inverse(s);
  for (std::size_t x = 0; x < f.size(); ++x) ASSERT_NEAR(back[x], f[x], 1e-10);
  EXPECT_NEAR(spectral_energy(s), inner_product(f, f).normalized, 1e-10);
}

TEST(Cube, Linearity) {
  const auto f = random_vector(8, 1);
  const auto g = random_vector(8, 2);
  std::vector<double> h(f.size());
  for (std::size_t x = 0; x < h.size(); ++x) h[x] = 2.0 * f[x] - 0.5 * g[x];
  const auto sf = wht_forward(f), sg = wht_forward(g), sh = wht_forward(CubeVector(8, h));
  for (std::size_t S = 0; S < h.size(); ++S) EXPECT_NEAR(sh[S], 2.0 * sf[S] - 0.5 * sg[S], 1e-12);
}

TEST(Cube, LevelProfiles) {
  const auto dict = level_profile(wht_forward(CubeVector(2, {0, 1, 0, 1})));
  EXPECT_EQ(dict.mass, (std::vector<double>{0.25, 0.25, 0.0}));

  const auto maj = level_profile(wht_forward(CubeVector(3, {0, 0, 0, 1, 0, 1, 1, 1})));
  ASSERT_EQ(maj.mass.size(), 4u);
  EXPECT_DOUBLE_EQ(maj.mass[0], 1.0 / 4);
  EXPECT_DOUBLE_EQ(maj.mass[1], 3.0 / 16);
  EXPECT_DOUBLE_EQ(maj.mass[2], 0.0);
  EXPECT_DOUBLE_EQ(maj.mass[3], 1.0 / 16);

  const auto zero = level_profile(Spectrum(5));
  for (double m : zero.mass) EXPECT_EQ(m, 0.0);
}

TEST(Cube, InnerProducts) {
  const CubeVector one(4, std::vector<double>(16, 1.0));
  const auto ip = inner_product(one, one);
  EXPECT_DOUBLE_EQ(ip.normalized, 1.0);
  EXPECT_DOUBLE_EQ(ip.unnormalized, 16.0);

  const auto disjoint = inner_product(CubeVector(2, {1, 0, 1, 0}), CubeVector(2, {0, 1, 0, 1}));
  EXPECT_EQ(disjoint.unnormalized, 0.0);

  const auto f = random_vector(6, 3), g = random_vector(6, 4);
  EXPECT_NEAR(spectral_inner_product(wht_forward(f), wht_forward(g)), inner_product(f, g).normalized, 1e-12);
}

TEST(Cube, Errors) {
  EXPECT_THROW(CubeVector(3, std::vector<double>(7)), Error);
  EXPECT_THROW(CubeVector(1, {0.0, std::nan("")}), Error);
  try {
    inner_product(CubeVector(2), CubeVector(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
  try {
    wht_forward(CubeVector(10), Limits{8, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::capacity);
  }
}

TEST(Cube, MemoryCap) {
  EXPECT_EQ(max_dimension_for_memory(512), 26u);
  EXPECT_EQ(max_dimension_for_memory(8), 20u);
  EXPECT_EQ(Limits{}.effective_max_n(), 26u);
  EXPECT_EQ((Limits{28, false}).effective_max_n(), 26u);
  EXPECT_EQ((Limits{28, true}).effective_max_n(), 28u);
}
