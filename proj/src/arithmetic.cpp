#include "walshprime/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace walshprime {

VonMangoldtTable::VonMangoldtTable(CubeVector values) : values_(std::move(values)) {
  if (values_[0] != 0.0 || (values_.size() > 1 && values_[1] != 0.0))
    throw Error(ErrorCode::invalid_argument, "von Mangoldt table must vanish at 0 and 1");
  for (double v : values_.values())
    if (v < 0.0) throw Error(ErrorCode::invalid_argument, "von Mangoldt table has a negative entry");
}

std::vector<std::uint64_t> VonMangoldtTable::support() const {
  std::vector<std::uint64_t> xs;
  for (std::size_t x = 0; x < values_.size(); ++x)
    if (values_[x] > 0.0) xs.push_back(x);
  return xs;
}

namespace {

// Primes up to `limit` inclusive, plain Eratosthenes.
std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

VonMangoldtTable sieve_von_mangoldt(unsigned n, const SieveOptions& options) {
  options.limits.check(n);
  if (options.segment_size == 0) throw Error(ErrorCode::invalid_argument, "sieve segment size must be positive");

  const std::uint64_t N = cube_size(n);
  CubeVector lambda(n);
  const auto base = small_primes(isqrt(N - 1));

  // Higher powers of the base primes; every prime above sqrt(N) only
  // contributes p itself and is found by the segments below.
  for (std::uint64_t p : base) {
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p * p; q < N; q *= p) {
      lambda[q] = lp;
      if (q > (N - 1) / p) break;
    }
  }

  std::vector<char> composite;
  for (std::uint64_t lo = 2; lo < N; lo += options.segment_size) {
    const std::uint64_t hi = std::min<std::uint64_t>(N, lo + options.segment_size);
    composite.assign(hi - lo, 0);
    for (std::uint64_t p : base) {
      if (p * p >= hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m < hi; m += p) composite[m - lo] = 1;
    }
    for (std::uint64_t x = lo; x < hi; ++x)
      if (!composite[x - lo]) lambda[x] = std::log(static_cast<double>(x));
  }
  return VonMangoldtTable(std::move(lambda));
}

double chebyshev_psi(const VonMangoldtTable& table, std::uint64_t u) {
  if (u >= table.size())
    throw Error(ErrorCode::out_of_range, "chebyshev_psi: u = " + std::to_string(u) + " is not below 2^" +
                                             std::to_string(table.n()));
  double sum = 0.0;
  for (std::uint64_t x = 0; x <= u; ++x) sum += table[x];
  return sum;
}

namespace {

void check_bits(const VonMangoldtTable& table, unsigned j, unsigned k) {
  if (j >= table.n() || k >= table.n())
    throw Error(ErrorCode::out_of_range, "pair_correlation: bit index outside [0, n)");
}

PairCorrelation correlate_shift(const VonMangoldtTable& table, const std::vector<std::uint64_t>& support,
                                std::int64_t shift) {
  const auto N = static_cast<std::int64_t>(table.size());
  double sum = 0.0;
  for (std::uint64_t x : support) {
    const std::int64_t y = static_cast<std::int64_t>(x) + shift;
    if (y >= 1 && y < N) sum += table[x] * table[static_cast<std::size_t>(y)];
  }
  return {shift, sum, sum / static_cast<double>(N)};
}

std::int64_t shift_of(unsigned j, unsigned k) {
  return (std::int64_t{1} << k) - (std::int64_t{1} << j);
}

}  // namespace

PairCorrelation pair_correlation(const VonMangoldtTable& table, unsigned j, unsigned k) {
  check_bits(table, j, k);
  return correlate_shift(table, table.support(), shift_of(j, k));
}

PairCorrelationMax max_pair_correlation(const VonMangoldtTable& table) {
  if (table.n() < 2) throw Error(ErrorCode::invalid_argument, "max_pair_correlation needs n >= 2");
  const auto support = table.support();
  PairCorrelationMax best;
  bool first = true;
  for (unsigned j = 0; j < table.n(); ++j) {
    for (unsigned k = 0; k < table.n(); ++k) {
      if (j == k) continue;
      const auto pc = correlate_shift(table, support, shift_of(j, k));
      if (first || pc.ratio > best.value.ratio) {
        best = {j, k, pc};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace walshprime
