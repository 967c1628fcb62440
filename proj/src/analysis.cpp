#include "walshprime/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace walshprime {

Pipeline::Pipeline(VonMangoldtTable table, Limits limits) : table_(std::move(table)), limits_(limits) {}

const Spectrum& Pipeline::lambda_spectrum() const {
  std::call_once(lhat_once_, [&] { lhat_.emplace(wht_forward(table_.values(), limits_)); });
  return *lhat_;
}

const LambdaTildeTable& Pipeline::lambda_tilde() const {
  std::call_once(tilde_once_, [&] { tilde_.emplace(build_lambda_tilde(table_, limits_)); });
  return *tilde_;
}

const Spectrum& Pipeline::lambda_tilde_spectrum() const {
  std::call_once(tilde_hat_once_, [&] { tilde_hat_.emplace(wht_forward(lambda_tilde().values(), limits_)); });
  return *tilde_hat_;
}

const LambdaTildeMoments& Pipeline::moments() const {
  std::call_once(moments_once_, [&] { moments_.emplace(lambda_tilde_moments(lambda_tilde())); });
  return *moments_;
}

bool CorrelationReport::decomposition_holds(double rel_tol) const noexcept {
  const double scale = std::abs(pairing_tilde) + std::abs(mean_term) + std::abs(low_term) + std::abs(high_term);
  return std::abs(decomposition_residual) <= rel_tol * std::max(scale, 1e-300);
}

bool CorrelationReport::cauchy_schwarz_holds() const noexcept {
  return std::abs(high_term) <= cs_bound * (1.0 + 1e-12) + 1e-15;
}

bool CorrelationReport::ineq32_holds(double rel_tol) const noexcept {
  return ineq32_lhs <= ineq32_rhs * (1.0 + rel_tol);
}

namespace {

struct Inputs {
  const CubeVector& f;
  const VonMangoldtTable& table;
  const LambdaTildeTable& lt;
  const Spectrum& tilde_hat;
  const LambdaTildeMoments& moments;
};

CorrelationReport correlate_impl(const Inputs& in, const CorrelateOptions& options, std::string spec,
                                 const Limits& limits) {
  const unsigned n = in.table.n();
  if (in.f.n() != n || in.lt.n() != n)
    throw Error(ErrorCode::dimension_mismatch, "correlate: f, Lambda and LambdaTilde must share n");
  if (!(options.K > 0.0) || !std::isfinite(options.K))
    throw Error(ErrorCode::invalid_argument, "correlate: K must be positive");

  CorrelationReport r;
  r.n = n;
  r.spec = std::move(spec);
  r.K = options.K;

  if (!options.attested) {
    const auto verdict = monotonicity_check(in.f, MonotonicityMode::automatic(n, options.seed));
    r.hypotheses_checked = true;
    r.monotone = verdict.monotone;
    r.odd_supported = is_odd_supported(in.f);
    if (!r.monotone) {
      const auto& e = *verdict.counterexample;
      r.warnings.push_back("not monotone: f(" + std::to_string(e.lower) + ") > f(" + std::to_string(e.upper) + ")");
    }
    if (!r.odd_supported) r.warnings.push_back("support not contained in [x_0 = 1]");
  }

  const std::size_t N = in.f.size();
  double f_sum = 0.0;
  double lambda_f = 0.0;
  double tilde_f = 0.0;
  for (std::size_t x = 0; x < N; ++x) {
    const double fx = in.f[x];
    f_sum += fx;
    lambda_f += in.table[x] * fx;
    tilde_f += in.lt[x] * fx;
  }
  if (f_sum == 0.0) throw Error(ErrorCode::degenerate_input, "correlate: E[f] = 0, theorem ratio undefined");

  const int shift = -static_cast<int>(n);
  r.mean_f = std::ldexp(f_sum, shift);
  r.sum_lambda_f = lambda_f;
  r.theorem_ratio = lambda_f / f_sum;
  r.pairing_tilde = std::ldexp(tilde_f, shift);
  r.ineq32_lhs = tilde_f;
  r.ineq32_rhs = static_cast<double>(n) * lambda_f;

  const Spectrum fhat = wht_forward(in.f, limits);
  const double cutoff = options.K * std::sqrt(static_cast<double>(n));
  r.mean_tilde = in.tilde_hat[0];
  r.mean_term = fhat[0] * in.tilde_hat[0];
  for (std::size_t s = 1; s < N; ++s) {
    const double term = fhat[s] * in.tilde_hat[s];
    if (static_cast<double>(popcount(s)) < cutoff) {
      r.low_term += term;
    } else {
      r.high_term += term;
      r.high_tail_mass += fhat[s] * fhat[s];
    }
  }
  r.decomposition_residual = r.pairing_tilde - r.mean_term - r.low_term - r.high_term;
  r.tilde_l2 = in.moments.l2;
  r.cs_bound = std::sqrt(r.high_tail_mass) * r.tilde_l2;

  r.probe.tilde_0 = in.tilde_hat[1];
  r.probe.tilde_0_predicted = (3.0 - static_cast<double>(n)) / 2.0;
  if (n > 1) {
    double single = 0.0, paired = 0.0;
    for (unsigned j = 1; j < n; ++j) {
      single += in.tilde_hat[std::size_t{1} << j];
      paired += in.tilde_hat[(std::size_t{1} << j) | 1];
    }
    r.probe.tilde_j_mean = single / (n - 1);
    r.probe.tilde_0j_mean = paired / (n - 1);
  }
  return r;
}

}  // namespace

CorrelationReport correlate(const CubeVector& f, const VonMangoldtTable& table, const LambdaTildeTable& lt,
                            const CorrelateOptions& options, std::string spec) {
  if (lt.n() != table.n() || f.n() != table.n())
    throw Error(ErrorCode::dimension_mismatch, "correlate: f, Lambda and LambdaTilde must share n");
  const Spectrum tilde_hat = wht_forward(lt.values());
  const LambdaTildeMoments moments = lambda_tilde_moments(lt);
  return correlate_impl({f, table, lt, tilde_hat, moments}, options, std::move(spec), Limits{});
}

CorrelationReport correlate(const CubeVector& f, const Pipeline& pipeline, const CorrelateOptions& options,
                            std::string spec) {
  if (f.n() != pipeline.n())
    throw Error(ErrorCode::dimension_mismatch, "correlate: f and the pipeline must share n");
  return correlate_impl({f, pipeline.table(), pipeline.lambda_tilde(), pipeline.lambda_tilde_spectrum(),
                         pipeline.moments()},
                        options, std::move(spec), pipeline.limits());
}

LowLevelMassReport low_level_mass(const Spectrum& lhat, unsigned n0) {
  if (n0 > lhat.n())
    throw Error(ErrorCode::out_of_range,
                "low_level_mass: n0 = " + std::to_string(n0) + " exceeds n = " + std::to_string(lhat.n()));
  LowLevelMassReport r;
  r.n = lhat.n();
  r.n0 = n0;
  r.per_level.assign(n0 + 1, 0.0);
  double largest = -1.0;
  for (std::size_t s = 2; s < lhat.size(); ++s) {  // skips {} and {0}
    const unsigned level = popcount(s);
    if (level > n0) continue;
    const double c = lhat[s];
    r.per_level[level] += c * c;
    if (std::abs(c) > largest) {
      largest = std::abs(c);
      r.largest_mask = s;
      r.largest_coefficient = c;
    }
  }
  for (double m : r.per_level) r.mass += m;
  return r;
}

std::string_view metric_name(TrendMetric metric) noexcept {
  switch (metric) {
    case TrendMetric::low_level_mass: return "low_level_mass";
    case TrendMetric::theorem_ratio: return "theorem_ratio";
    case TrendMetric::l2_ratio: return "l2_ratio";
    case TrendMetric::pair_correlation_max: return "pair_correlation_max";
  }
  return "unknown";
}

std::string_view trend_name(Trend trend) noexcept {
  switch (trend) {
    case Trend::flat: return "flat";
    case Trend::non_increasing: return "non_increasing";
    case Trend::non_decreasing: return "non_decreasing";
    case Trend::mixed: return "mixed";
  }
  return "unknown";
}

TrendMetric parse_metric(std::string_view name) {
  for (auto m : {TrendMetric::low_level_mass, TrendMetric::theorem_ratio, TrendMetric::l2_ratio,
                 TrendMetric::pair_correlation_max})
    if (metric_name(m) == name) return m;
  throw Error(ErrorCode::invalid_argument, "unknown trend metric '" + std::string(name) + "'");
}

Trend classify_trend(std::span<const double> values, double rel_tol) {
  auto same = [rel_tol](double a, double b) {
    return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), 1e-300});
  };
  bool up = false, down = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (same(values[i - 1], values[i])) continue;
    if (values[i] > values[i - 1]) up = true;
    else down = true;
  }
  if (up && down) return Trend::mixed;
  if (up) return Trend::non_decreasing;
  if (down) return Trend::non_increasing;
  return Trend::flat;
}

TrendTable trend_table(const TrendQuery& query, std::span<const unsigned> ns, const SieveOptions& sieve,
                       const TableSource& source) {
  TrendTable out;
  out.query = query;
  std::vector<double> values;
  for (unsigned n : ns) {
    Pipeline pipeline(source ? source(n) : sieve_von_mangoldt(n, sieve), sieve.limits);
    double value = 0.0;
    switch (query.metric) {
      case TrendMetric::low_level_mass:
        value = low_level_mass(pipeline.lambda_spectrum(), query.n0).mass;
        break;
      case TrendMetric::theorem_ratio: {
        const auto spec = MonotoneFunctionSpec::parse(query.spec, n, query.seed);
        const auto f = materialize(spec, sieve.limits);
        CorrelateOptions opts;
        opts.K = query.K;
        opts.seed = query.seed;
        value = correlate(f, pipeline, opts, spec.to_string()).theorem_ratio;
        break;
      }
      case TrendMetric::l2_ratio:
        value = pipeline.moments().l2_ratio;
        break;
      case TrendMetric::pair_correlation_max:
        value = max_pair_correlation(pipeline.table()).value.ratio;
        break;
    }
    out.rows.push_back({n, value});
    values.push_back(value);
  }
  out.trend = classify_trend(values);
  return out;
}

}  // namespace walshprime
