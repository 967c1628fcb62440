#pragma once

// Slow, independent reference computations. Nothing here shares code with
// the fast paths it is used to check: the Walsh characters are built from
// eps_j = 1 - 2 x_j one factor at a time, primes come from trial division,
// and LambdaTilde is scattered from the prime powers instead of gathered.

#include <cstdint>
#include <span>
#include <vector>

namespace walshprime::oracle {

/// fhat(S) = 2^-n sum_x f(x) prod_{j in S} (1 - 2 x_j). O(N^2 n).
std::vector<double> direct_wht(std::span<const double> f);

/// Lambda(x) by trial-division factorization.
double trial_division_lambda(std::uint64_t x);

/// Primes <= limit by trial division against the primes found so far.
std::vector<std::uint64_t> primes_by_trial_division(std::uint64_t limit);

/// psi(u) = sum_{p^k <= u} ln p from an explicit prime list.
double psi_from_primes(std::span<const std::uint64_t> primes, std::uint64_t u);

/// LambdaTilde by scattering Lambda(x) onto x with bit j cleared, for every
/// set bit j of x.
std::vector<double> scatter_lambda_tilde(std::span<const double> lambda);

}  // namespace walshprime::oracle
