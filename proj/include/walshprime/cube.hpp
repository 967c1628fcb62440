#pragma once

// Dense real-valued functions on the Boolean cube {0,1}^n and the
// Fourier-Walsh transform.
//
// Conventions (these differ from many WHT libraries, read carefully):
//   * x in [0, 2^n) is identified with the bit vector (x_0, ..., x_{n-1}),
//     x = sum_j x_j 2^j.
//   * eps_j = 1 - 2 x_j, so a set bit maps to -1, and
//     w_S(x) = prod_{j in S} eps_j = (-1)^popcount(x & S).
//   * The FORWARD transform carries the 2^-n factor:
//       fhat(S) = 2^-n sum_x f(x) w_S(x),
//     and the inverse carries none:
//       f(x) = sum_S fhat(S) w_S(x).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "walshprime/error.hpp"

namespace walshprime {

namespace detail {

// Dense array of 2^n doubles. The Tag keeps point-indexed vectors and
// mask-indexed spectra from being mixed up.
template <typename Tag>
class DenseCube {
 public:
  // Zero-filled array; only the hard bound 1 <= n <= 28 is enforced here,
  // configurable caps are checked by the operations that allocate.
  explicit DenseCube(unsigned n);

  // Takes ownership of `values`; requires values.size() == 2^n and all
  // entries finite.
  DenseCube(unsigned n, std::vector<double> values);

  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  bool all_finite() const noexcept;

  friend bool operator==(const DenseCube&, const DenseCube&) = default;

 private:
  unsigned n_;
  std::vector<double> values_;
};

struct PointTag;
struct MaskTag;

}  // namespace detail

/// f(x) for x in [0, 2^n).
using CubeVector = detail::DenseCube<detail::PointTag>;

/// fhat(S) for subset masks S in [0, 2^n); bit j of S set means j in S.
using Spectrum = detail::DenseCube<detail::MaskTag>;

/// Squared-coefficient mass by popcount level: mass[k] = sum_{|S|=k} fhat(S)^2.
struct LevelProfile {
  unsigned n = 0;
  std::vector<double> mass;

  double total() const noexcept;
};

struct InnerProduct {
  double normalized = 0.0;    // 2^-n sum_x f(x) g(x)
  double unnormalized = 0.0;  // sum_x f(x) g(x)
};

inline unsigned popcount(std::uint64_t x) noexcept {
  return static_cast<unsigned>(std::popcount(x));
}

inline std::size_t cube_size(unsigned n) noexcept { return std::size_t{1} << n; }

/// Unnormalized in-place butterfly: a[S] <- sum_x a[x] (-1)^popcount(x & S).
/// a.size() must be a power of two. It is its own inverse up to a factor
/// of a.size().
void fwht_in_place(std::span<double> a) noexcept;

/// fhat(S) = 2^-n sum_x f(x) w_S(x). O(N log N).
Spectrum wht_forward(const CubeVector& f, const Limits& limits = {});

/// f(x) = sum_S fhat(S) w_S(x).
CubeVector wht_inverse(const Spectrum& s, const Limits& limits = {});

LevelProfile level_profile(const Spectrum& s);

/// Sum of fhat(S)^2 over all S; equals 2^-n sum_x f(x)^2 by Parseval.
double spectral_energy(const Spectrum& s) noexcept;

InnerProduct inner_product(const CubeVector& f, const CubeVector& g);

/// Sum_S fhat(S) ghat(S); equals inner_product(f, g).normalized.
double spectral_inner_product(const Spectrum& a, const Spectrum& b);

}  // namespace walshprime
