#pragma once

// The von Mangoldt function on [0, 2^n) as a cube vector, Chebyshev's psi,
// and the shifted pair correlations sum_x Lambda(x) Lambda(x + 2^k - 2^j).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "walshprime/cube.hpp"

namespace walshprime {

struct SieveOptions {
  // Entries per sieve segment; 2^20 keeps a segment's flags in L2.
  std::size_t segment_size = std::size_t{1} << 20;
  Limits limits{};
};

/// Lambda(x) = ln p if x = p^k (p prime, k >= 1), else 0. Lambda(0) = Lambda(1) = 0.
class VonMangoldtTable {
 public:
  // Validates the shape of an externally supplied table (e.g. loaded from a
  // cache file): entries nonnegative and zero at x = 0 and x = 1.
  explicit VonMangoldtTable(CubeVector values);

  unsigned n() const noexcept { return values_.n(); }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t x) const noexcept { return values_[x]; }
  const CubeVector& values() const noexcept { return values_; }

  /// Indices x with Lambda(x) > 0, ascending.
  std::vector<std::uint64_t> support() const;

 private:
  CubeVector values_;
};

/// Segmented sieve of Eratosthenes over [0, 2^n).
VonMangoldtTable sieve_von_mangoldt(unsigned n, const SieveOptions& options = {});

/// psi(u) = sum_{x <= u} Lambda(x). Requires u < 2^n.
double chebyshev_psi(const VonMangoldtTable& table, std::uint64_t u);

struct PairCorrelation {
  std::int64_t shift = 0;  // 2^k - 2^j
  double sum = 0.0;        // sum Lambda(x) Lambda(x + shift), both arguments in [1, 2^n)
  double ratio = 0.0;      // sum / 2^n
};

PairCorrelation pair_correlation(const VonMangoldtTable& table, unsigned j, unsigned k);

struct PairCorrelationMax {
  unsigned j = 0;
  unsigned k = 0;
  PairCorrelation value;
};

/// Largest ratio-to-N over all ordered pairs j != k.
PairCorrelationMax max_pair_correlation(const VonMangoldtTable& table);

}  // namespace walshprime
