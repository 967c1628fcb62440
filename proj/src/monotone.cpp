#include "walshprime/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace walshprime {

namespace {

// Uniform integer in [0, bound) by rejection on raw mt19937_64 output, so
// the sequence does not depend on the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

// Masks of the DNF terms: m conjunctions of w distinct variables each, drawn
// by a partial Fisher-Yates shuffle.
std::vector<std::uint64_t> dnf_terms(const MonotoneFunctionSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<unsigned> vars(spec.n);
  std::vector<std::uint64_t> terms;
  terms.reserve(spec.terms);
  for (unsigned t = 0; t < spec.terms; ++t) {
    std::iota(vars.begin(), vars.end(), 0u);
    std::uint64_t mask = 0;
    for (unsigned i = 0; i < spec.width; ++i) {
      const auto pick = i + static_cast<unsigned>(uniform_below(rng, spec.n - i));
      std::swap(vars[i], vars[pick]);
      mask |= std::uint64_t{1} << vars[i];
    }
    terms.push_back(mask);
  }
  return terms;
}

unsigned recursive_majority_depth(unsigned n) {
  unsigned depth = 0;
  for (unsigned width = 3; width <= n; width *= 3) ++depth;
  return depth;
}

bool recursive_majority3(std::uint64_t x, unsigned depth) {
  // Level by level: groups of three bits collapse into one.
  std::uint64_t bits = x;
  unsigned count = 1;
  for (unsigned d = 0; d < depth; ++d) count *= 3;
  for (unsigned d = 0; d < depth; ++d) {
    std::uint64_t next = 0;
    for (unsigned g = 0; g < count / 3; ++g) {
      const unsigned votes = popcount((bits >> (3 * g)) & 0b111);
      if (votes >= 2) next |= std::uint64_t{1} << g;
    }
    bits = next;
    count /= 3;
  }
  return bits & 1;
}

}  // namespace

std::string_view family_name(Family family) noexcept {
  switch (family) {
    case Family::dictator: return "dictator";
    case Family::and_all: return "and";
    case Family::or_all: return "or";
    case Family::majority: return "majority";
    case Family::threshold: return "threshold";
    case Family::tribes: return "tribes";
    case Family::recursive_majority3: return "recmaj3";
    case Family::random_monotone_dnf: return "dnf";
  }
  return "unknown";
}

CubeVector materialize(const MonotoneFunctionSpec& spec, const Limits& limits) {
  limits.check(spec.n);
  spec.validate();
  const unsigned n = spec.n;
  const std::size_t N = cube_size(n);
  CubeVector f(n);

  auto fill = [&](auto&& predicate) {
    for (std::size_t x = 0; x < N; ++x) f[x] = predicate(static_cast<std::uint64_t>(x)) ? 1.0 : 0.0;
  };

  switch (spec.family) {
    case Family::dictator:
      fill([&](std::uint64_t x) { return (x >> spec.index) & 1; });
      break;
    case Family::and_all:
      fill([&](std::uint64_t x) { return x == N - 1; });
      break;
    case Family::or_all:
      fill([](std::uint64_t x) { return x != 0; });
      break;
    case Family::majority: {
      const unsigned t = (n + 2) / 2;  // ceil((n+1)/2)
      fill([&](std::uint64_t x) { return popcount(x) >= t; });
      break;
    }
    case Family::threshold:
      fill([&](std::uint64_t x) { return popcount(x) >= spec.threshold; });
      break;
    case Family::tribes: {
      const unsigned count = n / spec.width;
      const std::uint64_t tribe = (std::uint64_t{1} << spec.width) - 1;
      fill([&](std::uint64_t x) {
        for (unsigned t = 0; t < count; ++t) {
          const std::uint64_t m = tribe << (t * spec.width);
          if ((x & m) == m) return true;
        }
        return false;
      });
      break;
    }
    case Family::recursive_majority3: {
      const unsigned depth = recursive_majority_depth(n);
      fill([&](std::uint64_t x) { return recursive_majority3(x, depth); });
      break;
    }
    case Family::random_monotone_dnf: {
      const auto terms = dnf_terms(spec);
      fill([&](std::uint64_t x) {
        return std::any_of(terms.begin(), terms.end(), [x](std::uint64_t m) { return (x & m) == m; });
      });
      break;
    }
  }

  if (spec.odd_slice)
    for (std::size_t x = 0; x < N; x += 2) f[x] = 0.0;
  return f;
}

std::vector<MonotoneFunctionSpec> default_zoo(unsigned n, bool odd_slice, std::uint64_t seed) {
  std::vector<MonotoneFunctionSpec> zoo;
  auto add = [&](MonotoneFunctionSpec s) {
    s.n = n;
    s.odd_slice = odd_slice;
    zoo.push_back(s);
  };
  add({.family = Family::dictator, .index = 0});
  if (n > 1) add({.family = Family::dictator, .index = n - 1});
  add({.family = Family::and_all});
  add({.family = Family::or_all});
  add({.family = Family::majority});
  add({.family = Family::threshold, .threshold = std::max(1u, n / 3)});
  if (n >= 4) add({.family = Family::tribes, .width = 4});
  if (n >= 3) add({.family = Family::recursive_majority3});
  if (n >= 4) add({.family = Family::random_monotone_dnf, .width = 4, .terms = 8, .seed = seed});
  if (n >= 6) add({.family = Family::random_monotone_dnf, .width = 6, .terms = 32, .seed = seed + 1});
  return zoo;
}

MonotonicityVerdict monotonicity_check(const CubeVector& f, const MonotonicityMode& mode) {
  for (double v : f.values())
    if (v != 0.0 && v != 1.0) throw Error(ErrorCode::not_boolean, "monotonicity_check requires a 0/1-valued function");

  const unsigned n = f.n();
  MonotonicityVerdict verdict;
  auto visit = [&](std::uint64_t x, unsigned j) {
    const std::uint64_t lower = x & ~(std::uint64_t{1} << j);
    ++verdict.edges_checked;
    if (f[lower] > f[x]) {
      verdict.monotone = false;
      verdict.counterexample = Edge{lower, x, j};
      return false;
    }
    return true;
  };

  if (mode.kind == MonotonicityMode::Kind::exhaustive) {
    for (std::uint64_t x = 0; x < f.size(); ++x)
      for (unsigned j = 0; j < n; ++j)
        if (((x >> j) & 1) && !visit(x, j)) return verdict;
    return verdict;
  }

  std::mt19937_64 rng(mode.seed);
  for (std::uint64_t i = 0; i < mode.samples; ++i) {
    const std::uint64_t x = uniform_below(rng, f.size());
    const auto j = static_cast<unsigned>(uniform_below(rng, n));
    if (!visit(x | (std::uint64_t{1} << j), j)) return verdict;
  }
  return verdict;
}

bool is_odd_supported(const CubeVector& f) noexcept {
  for (std::size_t x = 0; x < f.size(); x += 2)
    if (f[x] != 0.0) return false;
  return true;
}

double tail_mass_above(const Spectrum& s, unsigned k) noexcept {
  double sum = 0.0;
  for (std::size_t mask = 0; mask < s.size(); ++mask)
    if (popcount(mask) > k) sum += s[mask] * s[mask];
  return sum;
}

TailReport tail_report(const Spectrum& s, double K) {
  if (!(K > 0.0) || !std::isfinite(K)) throw Error(ErrorCode::invalid_argument, "tail_report: K must be positive");
  TailReport r;
  r.K = K;
  r.cutoff = static_cast<unsigned>(std::ceil(K * std::sqrt(static_cast<double>(s.n()))));
  r.bound = 1.0 / (4.0 * K);
  for (std::size_t mask = 0; mask < s.size(); ++mask) {
    const double sq = s[mask] * s[mask];
    const unsigned level = popcount(mask);
    if (level > r.cutoff) r.tail += sq;
    r.total_influence_fw += level * sq;
  }
  for (unsigned j = 0; j < s.n(); ++j) r.degree1_sum += std::abs(s[std::size_t{1} << j]);
  return r;
}

InfluenceCheck influence_identity_check(const Spectrum& s) {
  InfluenceCheck c;
  for (std::size_t mask = 0; mask < s.size(); ++mask) c.lhs += popcount(mask) * s[mask] * s[mask];
  c.max_degree1 = -std::numeric_limits<double>::infinity();
  for (unsigned j = 0; j < s.n(); ++j) {
    const double coeff = s[std::size_t{1} << j];
    c.rhs += 0.5 * std::abs(coeff);
    c.max_degree1 = std::max(c.max_degree1, coeff);
  }
  c.gap = std::abs(c.lhs - c.rhs);
  return c;
}

}  // namespace walshprime
