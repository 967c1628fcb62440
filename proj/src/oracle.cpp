#include "walshprime/oracle.hpp"

#include <bit>
#include <cmath>

namespace walshprime::oracle {

std::vector<double> direct_wht(std::span<const double> f) {
  const std::size_t N = f.size();
  const unsigned n = static_cast<unsigned>(std::countr_zero(N));
  std::vector<double> out(N, 0.0);
  for (std::size_t s = 0; s < N; ++s) {
    double sum = 0.0;
    for (std::size_t x = 0; x < N; ++x) {
      double w = 1.0;
      for (unsigned j = 0; j < n; ++j) {
        if ((s >> j) & 1) w *= 1.0 - 2.0 * static_cast<double>((x >> j) & 1);
      }
      sum += f[x] * w;
    }
    out[s] = sum / static_cast<double>(N);
  }
  return out;
}

double trial_division_lambda(std::uint64_t x) {
  if (x < 2) return 0.0;
  std::uint64_t rest = x;
  std::uint64_t prime = 0;
  for (std::uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    if (prime != 0) return 0.0;
    prime = d;
    while (rest % d == 0) rest /= d;
  }
  if (rest > 1) {
    if (prime != 0) return 0.0;
    prime = rest;
  }
  return std::log(static_cast<double>(prime));
}

std::vector<std::uint64_t> primes_by_trial_division(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t c = 2; c <= limit; ++c) {
    bool prime = true;
    for (std::uint64_t p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double psi_from_primes(std::span<const std::uint64_t> primes, std::uint64_t u) {
  double sum = 0.0;
  for (std::uint64_t p : primes) {
    if (p > u) break;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p; q <= u; q *= p) {
      sum += lp;
      if (q > u / p) break;
    }
  }
  return sum;
}

std::vector<double> scatter_lambda_tilde(std::span<const double> lambda) {
  std::vector<double> out(lambda.size(), 0.0);
  for (std::size_t x = 0; x < lambda.size(); ++x) {
    if (lambda[x] == 0.0) continue;
    for (std::size_t rest = x; rest != 0; rest &= rest - 1) {
      const std::size_t bit = rest & (~rest + 1);
      out[x ^ bit] += lambda[x];
    }
  }
  return out;
}

}  // namespace walshprime::oracle
