#include "walshprime/cube.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace walshprime {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::io: return "io";
    case ErrorCode::degenerate_input: return "degenerate_input";
    case ErrorCode::not_boolean: return "not_boolean";
    case ErrorCode::checksum: return "checksum";
  }
  return "unknown";
}

unsigned Limits::effective_max_n() const noexcept {
  unsigned cap = max_n;
  if (cap > kHardMaxDimension) cap = kHardMaxDimension;
  if (!allow_over_cap && cap > kDefaultMaxDimension) cap = kDefaultMaxDimension;
  return cap;
}

void Limits::check(unsigned n) const {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "cube dimension must be at least 1");
  const unsigned cap = effective_max_n();
  if (n > cap) {
    std::string msg = "cube dimension " + std::to_string(n) + " exceeds the memory cap n <= " +
                      std::to_string(cap);
    if (max_n > kDefaultMaxDimension && !allow_over_cap)
      msg += " (raising the cap above " + std::to_string(kDefaultMaxDimension) +
             " requires explicit acknowledgment)";
    throw Error(ErrorCode::capacity, msg);
  }
}

unsigned max_dimension_for_memory(unsigned long long mebibytes) noexcept {
  const unsigned long long bytes = mebibytes << 20;
  unsigned n = 0;
  while (n < 63 && (sizeof(double) << (n + 1)) <= bytes) ++n;
  return n;
}

namespace detail {

namespace {

void check_dimension(unsigned n) {
  if (n == 0 || n > kHardMaxDimension)
    throw Error(n == 0 ? ErrorCode::invalid_argument : ErrorCode::capacity,
                "cube dimension " + std::to_string(n) + " outside [1, " +
                    std::to_string(kHardMaxDimension) + "]");
}

}  // namespace

template <typename Tag>
DenseCube<Tag>::DenseCube(unsigned n) : n_(n) {
  check_dimension(n);
  values_.assign(cube_size(n), 0.0);
}

template <typename Tag>
DenseCube<Tag>::DenseCube(unsigned n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  check_dimension(n);
  if (values_.size() != cube_size(n))
    throw Error(ErrorCode::dimension_mismatch,
                "expected " + std::to_string(cube_size(n)) + " values for n = " + std::to_string(n) +
                    ", got " + std::to_string(values_.size()));
  if (!all_finite()) throw Error(ErrorCode::invalid_argument, "cube values must be finite");
}

template <typename Tag>
bool DenseCube<Tag>::all_finite() const noexcept {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

template class DenseCube<PointTag>;
template class DenseCube<MaskTag>;

}  // namespace detail

double LevelProfile::total() const noexcept {
  double sum = 0.0;
  for (double m : mass) sum += m;
  return sum;
}

void fwht_in_place(std::span<double> a) noexcept {
  const std::size_t len = a.size();
  for (std::size_t h = 1; h < len; h *= 2) {
    for (std::size_t i = 0; i < len; i += h * 2) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j];
        const double y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
}

Spectrum wht_forward(const CubeVector& f, const Limits& limits) {
  limits.check(f.n());
  std::vector<double> coeffs(f.values().begin(), f.values().end());
  fwht_in_place(coeffs);
  const double scale = std::ldexp(1.0, -static_cast<int>(f.n()));
  for (double& c : coeffs) c *= scale;
  return Spectrum(f.n(), std::move(coeffs));
}

CubeVector wht_inverse(const Spectrum& s, const Limits& limits) {
  limits.check(s.n());
  std::vector<double> values(s.values().begin(), s.values().end());
  fwht_in_place(values);
  return CubeVector(s.n(), std::move(values));
}

LevelProfile level_profile(const Spectrum& s) {
  LevelProfile profile{s.n(), std::vector<double>(s.n() + 1, 0.0)};
  const auto coeffs = s.values();
  for (std::size_t mask = 0; mask < coeffs.size(); ++mask)
    profile.mass[popcount(mask)] += coeffs[mask] * coeffs[mask];
  return profile;
}

double spectral_energy(const Spectrum& s) noexcept {
  double sum = 0.0;
  for (double c : s.values()) sum += c * c;
  return sum;
}

InnerProduct inner_product(const CubeVector& f, const CubeVector& g) {
  if (f.n() != g.n())
    throw Error(ErrorCode::dimension_mismatch, "inner_product: dimensions " + std::to_string(f.n()) +
                                                   " and " + std::to_string(g.n()) + " differ");
  double sum = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) sum += f[x] * g[x];
  return {std::ldexp(sum, -static_cast<int>(f.n())), sum};
}

double spectral_inner_product(const Spectrum& a, const Spectrum& b) {
  if (a.n() != b.n())
    throw Error(ErrorCode::dimension_mismatch, "spectral_inner_product: dimensions differ");
  double sum = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) sum += a[s] * b[s];
  return sum;
}

}  // namespace walshprime
