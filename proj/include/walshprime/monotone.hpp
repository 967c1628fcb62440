#pragma once

// Monotone Boolean functions on {0,1}^n: a small family zoo, a monotonicity
// verifier, and the spectral tail / influence quantities that control how
// much Fourier-Walsh mass a monotone function can put on high levels.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walshprime/cube.hpp"

namespace walshprime {

enum class Family {
  dictator,             // x_j
  and_all,              // x_0 AND ... AND x_{n-1}
  or_all,               // x_0 OR ... OR x_{n-1}
  majority,             // strict majority: popcount(x) >= ceil((n+1)/2)
  threshold,            // popcount(x) >= t
  tribes,               // OR of floor(n/w) disjoint width-w ANDs
  recursive_majority3,  // MAJ3 iterated on the first 3^k <= n variables
  random_monotone_dnf,  // OR of m random width-w ANDs
};

/// Declarative description of one zoo member. Parameters that do not apply
/// to the family are ignored. Spec strings look like
///   "majority", "dictator:j=3", "threshold:t=5", "tribes:w=4",
///   "dnf:m=32,w=6,seed=7", "recmaj3", "and", "or"
/// with an optional ",odd" (or ":odd") flag selecting the odd slice f * x_0.
struct MonotoneFunctionSpec {
  Family family = Family::majority;
  unsigned n = 0;
  bool odd_slice = false;
  unsigned index = 0;      // dictator(j)
  unsigned threshold = 0;  // threshold(t)
  unsigned width = 0;      // tribes(w), dnf(w)
  unsigned terms = 0;      // dnf(m)
  std::uint64_t seed = 0;  // dnf(seed)

  /// Throws Error(invalid_argument) on unknown families, malformed
  /// parameters, or parameters incompatible with n. `default_seed` is used
  /// by dnf specs that do not name a seed.
  static MonotoneFunctionSpec parse(std::string_view text, unsigned n, std::uint64_t default_seed = 0);

  /// Canonical spec string; parse(to_string(), n) reproduces *this.
  std::string to_string() const;

  /// Throws Error(invalid_argument) if the parameters do not fit n.
  void validate() const;
};

std::string_view family_name(Family family) noexcept;

/// Dense 0/1 vector of the described function.
CubeVector materialize(const MonotoneFunctionSpec& spec, const Limits& limits = {});

/// A fixed list of zoo members for dimension n, covering every family.
std::vector<MonotoneFunctionSpec> default_zoo(unsigned n, bool odd_slice, std::uint64_t seed = 42);

struct MonotonicityMode {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;

  static MonotonicityMode exhaustive() { return {}; }
  static MonotonicityMode sampled(std::uint64_t samples, std::uint64_t seed) {
    return {Kind::sampled, samples, seed};
  }
  /// Exhaustive up to n = 16, 10^6 sampled edges above.
  static MonotonicityMode automatic(unsigned n, std::uint64_t seed) {
    return n <= 16 ? exhaustive() : sampled(1'000'000, seed);
  }
};

struct Edge {
  std::uint64_t lower = 0;  // x \ {bit}
  std::uint64_t upper = 0;  // x
  unsigned bit = 0;
};

struct MonotonicityVerdict {
  bool monotone = true;
  std::optional<Edge> counterexample;  // first violating edge found
  std::uint64_t edges_checked = 0;
};

/// Checks f(x \ {j}) <= f(x) over single-bit-clear edges; over all edges
/// this is equivalent to monotonicity. Throws Error(not_boolean) unless f
/// is 0/1-valued.
MonotonicityVerdict monotonicity_check(const CubeVector& f, const MonotonicityMode& mode = {});

/// True if f vanishes on every even x (support inside [x_0 = 1]).
bool is_odd_supported(const CubeVector& f) noexcept;

struct TailReport {
  double K = 0.0;
  unsigned cutoff = 0;              // ceil(K sqrt(n))
  double tail = 0.0;                // sum_{|S| > cutoff} fhat(S)^2
  double bound = 0.0;               // 1 / (4K)
  double total_influence_fw = 0.0;  // sum_S |S| fhat(S)^2
  double degree1_sum = 0.0;         // sum_j |fhat({j})|

  bool within_bound(double tolerance = 1e-10) const noexcept { return tail <= bound + tolerance; }
};

/// For monotone 0/1-valued f, tail <= 1/(4K): the total influence is
/// (1/2) sum_j |fhat({j})| <= sqrt(n)/4, then Markov at level K sqrt(n).
TailReport tail_report(const Spectrum& s, double K);

/// sum_{|S| > k} fhat(S)^2.
double tail_mass_above(const Spectrum& s, unsigned k) noexcept;

struct InfluenceCheck {
  double lhs = 0.0;         // sum_S |S| fhat(S)^2
  double rhs = 0.0;         // 1/2 sum_j |fhat({j})|
  double gap = 0.0;         // |lhs - rhs|
  double max_degree1 = 0.0; // max_j fhat({j}); <= 0 for monotone f under eps = 1 - 2x

  /// Identity holds and every degree-1 coefficient has the monotone sign.
  bool holds(double tolerance = 1e-10) const noexcept { return gap < tolerance && max_degree1 <= tolerance; }
};

InfluenceCheck influence_identity_check(const Spectrum& s);

}  // namespace walshprime
