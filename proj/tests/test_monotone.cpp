#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "walshprime/monotone.hpp"

using namespace walshprime;

namespace {
CubeVector make(const std::string& spec, unsigned n) { return materialize(MonotoneFunctionSpec::parse(spec, n)); }

std::vector<double> as_vec(const CubeVector& v) { return {v.values().begin(), v.values().end()}; }
}  // namespace

TEST(Zoo, SmallMaterializations) {
  EXPECT_EQ(as_vec(make("majority", 3)), (std::vector<double>{0, 0, 0, 1, 0, 1, 1, 1}));
  EXPECT_EQ(as_vec(make("dictator:j=0", 2)), (std::vector<double>{0, 1, 0, 1}));
  EXPECT_EQ(as_vec(make("and", 2)), (std::vector<double>{0, 0, 0, 1}));
  EXPECT_EQ(as_vec(make("or", 2)), (std::vector<double>{0, 1, 1, 1}));
  EXPECT_EQ(as_vec(make("threshold:t=2", 3)), as_vec(make("majority", 3)));
  EXPECT_EQ(as_vec(make("majority,odd", 3)), (std::vector<double>{0, 0, 0, 1, 0, 1, 0, 1}));
}

TEST(Zoo, EvenMajorityIsStrict) {
  const auto f = make("majority", 4);
  EXPECT_EQ(f[0b0011], 0.0);
  EXPECT_EQ(f[0b0111], 1.0);
}

TEST(Zoo, Tribes) {
  const auto f = make("tribes:w=2", 4);
  EXPECT_EQ(f[0b0011], 1.0);
  EXPECT_EQ(f[0b1100], 1.0);
  EXPECT_EQ(f[0b0101], 0.0);
}

TEST(Zoo, RecursiveMajority) {
  const auto f = make("recmaj3", 9);
  // blocks {0,1,2}, {3,4,5}, {6,7,8}: two blocks with two ones each
  EXPECT_EQ(f[0b000011011], 1.0);
  EXPECT_EQ(f[0b000001011], 0.0);
}

TEST(Zoo, SpecRoundTrip) {
  for (unsigned n : {4u, 9u, 12u}) {
    for (bool odd : {false, true}) {
      for (const auto& spec : default_zoo(n, odd, 11)) {
        const auto again = MonotoneFunctionSpec::parse(spec.to_string(), n);
        EXPECT_EQ(again.to_string(), spec.to_string());
        EXPECT_EQ(materialize(again), materialize(spec));
      }
    }
  }
}

TEST(Zoo, BadSpecs) {
  for (const char* text : {"", "bogus", "tribes:w=0", "tribes:w=9", "dictator:j=8", "threshold:t=x",
                           "dnf:m=3,w=2,zz=1"}) {
    try {
      MonotoneFunctionSpec::parse(text, 8);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::invalid_argument) << text;
    }
  }
}

TEST(Zoo, DnfIsReproducibleAndMonotone) {
  const auto a = make("dnf:m=8,w=4,seed=42", 12);
  const auto b = make("dnf:m=8,w=4,seed=42", 12);
  const auto c = make("dnf:m=8,w=4,seed=43", 12);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_TRUE(monotonicity_check(a).monotone);
}

TEST(Zoo, DefaultZooCoversEveryFamily) {
  std::set<Family> seen;
  for (const auto& s : default_zoo(12, false)) seen.insert(s.family);
  EXPECT_EQ(seen.size(), 8u);
}

TEST(Monotonicity, AntiDictator) {
  const auto v = monotonicity_check(CubeVector(1, {1.0, 0.0}));
  ASSERT_FALSE(v.monotone);
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(v.counterexample->lower, 0u);
  EXPECT_EQ(v.counterexample->upper, 1u);
  EXPECT_EQ(v.counterexample->bit, 0u);
}

TEST(Monotonicity, OrAndSampled) {
  EXPECT_TRUE(monotonicity_check(make("or", 10)).monotone);
  EXPECT_TRUE(monotonicity_check(make("tribes:w=3", 12), MonotonicityMode::sampled(10000, 5)).monotone);
}

TEST(Monotonicity, RejectsNonBoolean) {
  try {
    monotonicity_check(CubeVector(1, {0.0, 0.5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_boolean);
  }
}

TEST(Monotonicity, Majority15IsFast) {
  const auto f = make("majority", 15);
  const auto start = std::chrono::steady_clock::now();
  const auto v = monotonicity_check(f, MonotonicityMode::exhaustive());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(v.monotone);
  EXPECT_EQ(v.edges_checked, 15u << 14);
  EXPECT_LT(secs, 1.0);
}

TEST(Tail, Examples) {
  const auto dict = tail_report(wht_forward(make("dictator:j=0", 9)), 1.0);
  EXPECT_EQ(dict.tail, 0.0);

  const auto maj = wht_forward(make("majority", 3));
  EXPECT_DOUBLE_EQ(tail_mass_above(maj, 1), 1.0 / 16);

  const auto tribes = tail_report(wht_forward(make("tribes:w=4", 16)), 2.0);
  EXPECT_EQ(tribes.cutoff, 8u);
  EXPECT_DOUBLE_EQ(tribes.bound, 0.125);
  EXPECT_TRUE(tribes.within_bound());
}

TEST(Tail, MarkovConsistency) {
  const auto s = wht_forward(make("majority", 12));
  const auto r = tail_report(s, 1.0);
  for (unsigned k = 1; k <= 12; ++k) EXPECT_LE(tail_mass_above(s, k), r.total_influence_fw / k + 1e-12);
}

TEST(Influence, Examples) {
  const auto d = influence_identity_check(wht_forward(make("dictator:j=0", 4)));
  EXPECT_DOUBLE_EQ(d.lhs, 0.25);
  EXPECT_DOUBLE_EQ(d.rhs, 0.25);

  const auto m = influence_identity_check(wht_forward(make("majority", 3)));
  EXPECT_DOUBLE_EQ(m.lhs, 3.0 / 8);
  EXPECT_DOUBLE_EQ(m.rhs, 3.0 / 8);
  EXPECT_TRUE(m.holds());
}

TEST(Influence, MonotoneSignProperty) {
  for (bool odd : {false, true}) {
    for (const auto& spec : default_zoo(10, odd, 3)) {
      const auto s = wht_forward(materialize(spec));
      for (unsigned j = 0; j < 10; ++j) EXPECT_LE(s[std::size_t{1} << j], 1e-15) << spec.to_string();
      EXPECT_TRUE(influence_identity_check(s).holds()) << spec.to_string();
    }
  }
}

TEST(Influence, AntiMonotoneFailsSignCheck) {
  // 1 - x_0 has the right |.| identity but the wrong sign.
  const auto c = influence_identity_check(wht_forward(CubeVector(2, {1, 0, 1, 0})));
  EXPECT_LT(c.gap, 1e-15);
  EXPECT_FALSE(c.holds());
}

TEST(OddSlice, Support) {
  EXPECT_TRUE(is_odd_supported(make("tribes:w=2,odd", 6)));
  EXPECT_FALSE(is_odd_supported(make("tribes:w=2", 6)));
}
