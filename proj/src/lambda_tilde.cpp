#include "walshprime/lambda_tilde.hpp"

#include <cmath>
#include <utility>

namespace walshprime {

LambdaTildeTable::LambdaTildeTable(CubeVector values) : values_(std::move(values)) {
  for (double v : values_.values())
    if (v < 0.0) throw Error(ErrorCode::invalid_argument, "LambdaTilde must be nonnegative");
}

LambdaTildeTable build_lambda_tilde(const VonMangoldtTable& table, const Limits& limits) {
  const unsigned n = table.n();
  limits.check(n);
  CubeVector out(n);
  const std::size_t N = table.size();
  for (std::size_t y = 0; y < N; ++y) {
    double sum = 0.0;
    for (unsigned j = 0; j < n; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      if ((y & bit) == 0) sum += table[y | bit];
    }
    out[y] = sum;
  }
  return LambdaTildeTable(std::move(out));
}

Spectrum lambda_tilde_spectrum_via_identity(const Spectrum& lhat) {
  const unsigned n = lhat.n();
  const std::size_t N = lhat.size();
  Spectrum out(n);
  const double half_n = 0.5 * static_cast<double>(n);
  for (std::size_t s = 0; s < N; ++s) {
    double neighbours = 0.0;
    for (unsigned j = 0; j < n; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      // S \ {j} enters with +1/2, S u {j} with -1/2; both are s ^ bit.
      neighbours += (s & bit) ? lhat[s ^ bit] : -lhat[s ^ bit];
    }
    out[s] = (half_n - static_cast<double>(popcount(s))) * lhat[s] + 0.5 * neighbours;
  }
  return out;
}

LambdaTildeMoments lambda_tilde_moments(const LambdaTildeTable& lt) {
  double sum = 0.0;
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (double v : lt.values().values()) {
    sum += v;
    abs_sum += std::abs(v);
    sq_sum += v * v;
  }
  const int shift = -static_cast<int>(lt.n());
  LambdaTildeMoments m;
  m.mean = std::ldexp(sum, shift);
  m.l1 = std::ldexp(abs_sum, shift);
  m.l2 = std::sqrt(std::ldexp(sq_sum, shift));
  m.l2_ratio = m.l2 / static_cast<double>(lt.n());
  return m;
}

double popcount_weighted_mass(const VonMangoldtTable& table) noexcept {
  double sum = 0.0;
  for (std::size_t x = 0; x < table.size(); ++x) sum += table[x] * popcount(x);
  return sum;
}

}  // namespace walshprime
