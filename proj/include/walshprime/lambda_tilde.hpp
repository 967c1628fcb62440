#pragma once

// The smoothed distribution obtained by moving the mass Lambda(x) of every
// prime power x onto each point x \ {j} reached by clearing one set bit j:
//
//   LambdaTilde(y) = sum_{j : y_j = 0} Lambda(y + 2^j).

#include "walshprime/arithmetic.hpp"
#include "walshprime/cube.hpp"

namespace walshprime {

class LambdaTildeTable {
 public:
  explicit LambdaTildeTable(CubeVector values);

  unsigned n() const noexcept { return values_.n(); }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t y) const noexcept { return values_[y]; }
  const CubeVector& values() const noexcept { return values_; }

 private:
  CubeVector values_;
};

struct LambdaTildeMoments {
  double mean = 0.0;      // 2^-n sum_y LambdaTilde(y)
  double l1 = 0.0;        // 2^-n sum_y |LambdaTilde(y)|
  double l2 = 0.0;        // (2^-n sum_y LambdaTilde(y)^2)^(1/2)
  double l2_ratio = 0.0;  // l2 / n
};

/// O(N n).
LambdaTildeTable build_lambda_tilde(const VonMangoldtTable& table, const Limits& limits = {});

/// Spectrum of LambdaTilde computed from the spectrum of Lambda alone:
///
///   tilde(S) = (n/2 - |S|) lhat(S) + 1/2 sum_{j in S} lhat(S \ {j})
///                                  - 1/2 sum_{j not in S} lhat(S u {j}).
///
/// `lhat` must be wht_forward of the same table the LambdaTilde was built
/// from. O(N n).
Spectrum lambda_tilde_spectrum_via_identity(const Spectrum& lhat);

LambdaTildeMoments lambda_tilde_moments(const LambdaTildeTable& lt);

/// sum_x Lambda(x) popcount(x); equals sum_y LambdaTilde(y) exactly.
double popcount_weighted_mass(const VonMangoldtTable& table) noexcept;

}  // namespace walshprime
