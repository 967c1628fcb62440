#include <gtest/gtest.h>

#include <cmath>

#include "brute.hpp"
#include "walshprime/analysis.hpp"

using namespace walshprime;

namespace {
const double l3 = std::log(3.0), l5 = std::log(5.0), l7 = std::log(7.0);

CubeVector spec_vector(const std::string& text, unsigned n) {
  return materialize(MonotoneFunctionSpec::parse(text, n));
}
}  // namespace

TEST(Correlate, DictatorN3) {
  const auto table = sieve_von_mangoldt(3);
  const auto lt = build_lambda_tilde(table);
  const auto r = correlate(spec_vector("dictator:j=0", 3), table, lt, {.K = 1.0}, "dictator:j=0");
  EXPECT_NEAR(r.sum_lambda_f, l3 + l5 + l7, 1e-12);
  EXPECT_DOUBLE_EQ(r.mean_f, 0.5);
  EXPECT_NEAR(r.theorem_ratio, (l3 + l5 + l7) / 4, 1e-12);
  EXPECT_GE(r.theorem_ratio, 1.0);
  EXPECT_NEAR(r.ineq32_lhs, lt[1] + lt[3] + lt[5] + lt[7], 1e-12);
  EXPECT_NEAR(r.ineq32_lhs, l3 + l5 + 2 * l7, 1e-12);
  EXPECT_NEAR(r.ineq32_rhs, 3 * (l3 + l5 + l7), 1e-12);
  EXPECT_TRUE(r.ineq32_holds());
  EXPECT_TRUE(r.decomposition_holds());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Correlate, ConstantOneHasNoFluctuatingTerms) {
  const unsigned n = 8;
  Pipeline p(sieve_von_mangoldt(n));
  const CubeVector one(n, std::vector<double>(cube_size(n), 1.0));
  const auto r = correlate(one, p);
  EXPECT_EQ(r.low_term, 0.0);
  EXPECT_EQ(r.high_term, 0.0);
  EXPECT_NEAR(r.pairing_tilde, r.mean_tilde, 1e-12);
  EXPECT_FALSE(r.odd_supported);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Correlate, NonMonotoneInputIsWarnedNotRejected) {
  Pipeline p(sieve_von_mangoldt(4));
  std::vector<double> v(16, 0.0);
  v[1] = 1.0;  // indicator of x = 1: odd-supported but not monotone
  const auto r = correlate(CubeVector(4, v), p);
  EXPECT_FALSE(r.monotone);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Correlate, ZeroFunctionIsDegenerate) {
  Pipeline p(sieve_von_mangoldt(4));
  try {
    correlate(CubeVector(4), p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_input);
  }
}

TEST(Correlate, DimensionMismatch) {
  Pipeline p(sieve_von_mangoldt(5));
  try {
    correlate(spec_vector("or", 4), p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(Correlate, DecompositionAndBoundsOnZoo) {
  const unsigned n = 12;
  Pipeline p(sieve_von_mangoldt(n));
  for (bool odd : {false, true}) {
    for (const auto& spec : default_zoo(n, odd)) {
      const auto r = correlate(materialize(spec), p, {.K = 1.0, .attested = true});
      EXPECT_TRUE(r.decomposition_holds()) << spec.to_string();
      EXPECT_TRUE(r.cauchy_schwarz_holds()) << spec.to_string();
      if (odd) {
        EXPECT_TRUE(r.ineq32_holds()) << spec.to_string();
      }
    }
  }
}

TEST(Correlate, PipelineAndTablesAgree) {
  const unsigned n = 10;
  const auto table = sieve_von_mangoldt(n);
  Pipeline p(table);
  const auto f = spec_vector("majority,odd", n);
  const auto a = correlate(f, table, build_lambda_tilde(table));
  const auto b = correlate(f, p);
  EXPECT_NEAR(a.pairing_tilde, b.pairing_tilde, 1e-13);
  EXPECT_NEAR(a.low_term, b.low_term, 1e-12);
  EXPECT_NEAR(a.high_term, b.high_term, 1e-12);
}

TEST(LowLevelMass, Examples) {
  const auto lhat = wht_forward(sieve_von_mangoldt(8).values());
  EXPECT_EQ(low_level_mass(lhat, 0).mass, 0.0);

  Spectrum constant(8);
  constant[0] = 1.0;
  EXPECT_EQ(low_level_mass(constant, 3).mass, 0.0);

  const auto t = sieve_von_mangoldt(8);
  const auto direct = brute::wht({t.values().values().begin(), t.values().values().end()});
  double expected = 0.0;
  for (std::size_t S = 2; S < direct.size(); ++S)
    if (__builtin_popcountll(S) <= 2) expected += direct[S] * direct[S];
  const auto r = low_level_mass(lhat, 2);
  EXPECT_NEAR(r.mass, expected, 1e-12);
  ASSERT_EQ(r.per_level.size(), 3u);
  EXPECT_EQ(r.per_level[0], 0.0);
  EXPECT_NEAR(r.per_level[1] + r.per_level[2], r.mass, 1e-15);
  EXPECT_LE(r.mass, spectral_energy(lhat));
  EXPECT_NE(r.largest_mask, 0u);
  EXPECT_NE(r.largest_mask, 1u);

  try {
    low_level_mass(lhat, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::out_of_range);
  }
}

TEST(Trend, Classification) {
  EXPECT_EQ(classify_trend(std::vector<double>{2, 2, 2}), Trend::flat);
  EXPECT_EQ(classify_trend(std::vector<double>{3, 2, 2}), Trend::non_increasing);
  EXPECT_EQ(classify_trend(std::vector<double>{1, 2, 3}), Trend::non_decreasing);
  EXPECT_EQ(classify_trend(std::vector<double>{1, 3, 2}), Trend::mixed);
}

TEST(Trend, LowLevelMassRows) {
  const std::vector<unsigned> ns{12, 14, 16};
  TrendQuery q;
  q.n0 = 2;
  const auto t = trend_table(q, ns);
  ASSERT_EQ(t.rows.size(), 3u);
  for (const auto& row : t.rows) {
    EXPECT_TRUE(std::isfinite(row.value));
    EXPECT_GE(row.value, 0.0);
  }
}

TEST(Trend, MajorityTheoremRatio) {
  const std::vector<unsigned> ns{16, 18, 20};
  TrendQuery q;
  q.metric = TrendMetric::theorem_ratio;
  q.spec = "majority";
  const auto t = trend_table(q, ns);
  for (const auto& row : t.rows) EXPECT_GE(row.value, 0.9) << row.n;
}

TEST(Trend, MetricNames) {
  for (auto m : {TrendMetric::low_level_mass, TrendMetric::theorem_ratio, TrendMetric::l2_ratio,
                 TrendMetric::pair_correlation_max})
    EXPECT_EQ(parse_metric(metric_name(m)), m);
  EXPECT_THROW(parse_metric("nope"), Error);
}
