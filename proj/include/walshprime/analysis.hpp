#pragma once

// Theorem-level reports: the correlation of a monotone function with the
// primes, its exact Fourier-Walsh decomposition through LambdaTilde, the
// low-level spectral mass of Lambda, and trends of these across n.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "walshprime/arithmetic.hpp"
#include "walshprime/cube.hpp"
#include "walshprime/lambda_tilde.hpp"
#include "walshprime/monotone.hpp"

namespace walshprime {

/// Holds one VonMangoldtTable and computes the derived arrays (its
/// spectrum, LambdaTilde, LambdaTilde's spectrum) on first use. Each
/// derived array is built exactly once; concurrent readers are safe.
class Pipeline {
 public:
  explicit Pipeline(VonMangoldtTable table, Limits limits = {});

  unsigned n() const noexcept { return table_.n(); }
  const VonMangoldtTable& table() const noexcept { return table_; }
  const Limits& limits() const noexcept { return limits_; }

  const Spectrum& lambda_spectrum() const;
  const LambdaTildeTable& lambda_tilde() const;
  const Spectrum& lambda_tilde_spectrum() const;
  const LambdaTildeMoments& moments() const;

 private:
  VonMangoldtTable table_;
  Limits limits_;

  mutable std::once_flag lhat_once_, tilde_once_, tilde_hat_once_, moments_once_;
  mutable std::optional<Spectrum> lhat_;
  mutable std::optional<LambdaTildeTable> tilde_;
  mutable std::optional<Spectrum> tilde_hat_;
  mutable std::optional<LambdaTildeMoments> moments_;
};

struct CorrelateOptions {
  double K = 4.0;  // low/high split at |S| = K sqrt(n)
  // When false, monotonicity and odd support are checked and violations
  // recorded as warnings; when true the caller vouches for them.
  bool attested = false;
  std::uint64_t seed = 0;  // sampled monotonicity check above n = 16
};

/// Observed LambdaTilde coefficients next to their leading-order values
/// (n large): tilde({0}) ~ (3-n)/2, tilde({j}) ~ 1/2, tilde({0,j}) ~ -1/2.
/// Reported only; the error terms are asymptotic.
struct CoefficientProbe {
  double tilde_0 = 0.0;
  double tilde_0_predicted = 0.0;
  double tilde_j_mean = 0.0;   // mean over 0 < j < n
  double tilde_0j_mean = 0.0;  // mean over 0 < j < n
};

struct CorrelationReport {
  unsigned n = 0;
  std::string spec;
  double K = 0.0;

  double mean_f = 0.0;           // E[f]
  double sum_lambda_f = 0.0;     // sum_{0<x<2^n} Lambda(x) f(x)
  double theorem_ratio = 0.0;    // sum_lambda_f / (2^n E[f])

  double pairing_tilde = 0.0;    // 2^-n sum_y f(y) LambdaTilde(y)
  double mean_tilde = 0.0;       // E[LambdaTilde]
  double mean_term = 0.0;        // E[f] E[LambdaTilde]
  double low_term = 0.0;         // sum_{S != {}, |S| <  K sqrt n} fhat(S) tilde(S)
  double high_term = 0.0;        // sum_{|S| >= K sqrt n} fhat(S) tilde(S)
  double decomposition_residual = 0.0;  // pairing_tilde - mean_term - low_term - high_term

  double high_tail_mass = 0.0;   // sum_{|S| >= K sqrt n} fhat(S)^2
  double tilde_l2 = 0.0;         // (2^-n sum LambdaTilde^2)^(1/2)
  double cs_bound = 0.0;         // sqrt(high_tail_mass) * tilde_l2 >= |high_term|

  double ineq32_lhs = 0.0;       // sum_y LambdaTilde(y) f(y)
  double ineq32_rhs = 0.0;       // n sum_x Lambda(x) f(x)

  CoefficientProbe probe;

  bool hypotheses_checked = false;
  bool monotone = true;
  bool odd_supported = true;
  std::vector<std::string> warnings;

  bool decomposition_holds(double rel_tol = 1e-9) const noexcept;
  bool cauchy_schwarz_holds() const noexcept;
  bool ineq32_holds(double rel_tol = 1e-12) const noexcept;
};

/// Throws Error(degenerate_input) when E[f] = 0, Error(dimension_mismatch)
/// when the arrays disagree on n, Error(not_boolean) when f is not 0/1.
CorrelationReport correlate(const CubeVector& f, const VonMangoldtTable& table, const LambdaTildeTable& lt,
                            const CorrelateOptions& options = {}, std::string spec = {});

/// Same, reusing the transforms cached in `pipeline`.
CorrelationReport correlate(const CubeVector& f, const Pipeline& pipeline, const CorrelateOptions& options = {},
                            std::string spec = {});

struct LowLevelMassReport {
  unsigned n = 0;
  unsigned n0 = 0;
  double mass = 0.0;                // sum over 1 <= |S| <= n0, S != {0}
  std::vector<double> per_level;    // per_level[k] for k = 0..n0 (entry 0 is always 0)
  std::uint64_t largest_mask = 0;   // argmax |lhat(S)| over the same index set
  double largest_coefficient = 0.0; // signed value at largest_mask
};

/// Throws Error(out_of_range) if n0 > n.
LowLevelMassReport low_level_mass(const Spectrum& lhat, unsigned n0);

enum class TrendMetric { low_level_mass, theorem_ratio, l2_ratio, pair_correlation_max };
enum class Trend { flat, non_increasing, non_decreasing, mixed };

std::string_view metric_name(TrendMetric metric) noexcept;
std::string_view trend_name(Trend trend) noexcept;
/// Throws Error(invalid_argument) on an unknown name.
TrendMetric parse_metric(std::string_view name);

struct TrendQuery {
  TrendMetric metric = TrendMetric::low_level_mass;
  unsigned n0 = 2;               // low_level_mass
  std::string spec;              // theorem_ratio: zoo spec string, re-parsed per n
  double K = 4.0;                // theorem_ratio
  std::uint64_t seed = 0;
};

struct TrendRow {
  unsigned n = 0;
  double value = 0.0;
};

struct TrendTable {
  TrendQuery query;
  std::vector<TrendRow> rows;
  Trend trend = Trend::flat;
};

/// Supplies the table for a given n; defaults to sieving in memory.
using TableSource = std::function<VonMangoldtTable(unsigned n)>;

TrendTable trend_table(const TrendQuery& query, std::span<const unsigned> ns, const SieveOptions& sieve = {},
                       const TableSource& source = {});

/// Flat when all values agree within rel_tol, otherwise the monotone
/// direction if there is one.
Trend classify_trend(std::span<const double> values, double rel_tol = 1e-12);

}  // namespace walshprime
