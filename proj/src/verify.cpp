#include "walshprime/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "walshprime/analysis.hpp"
#include "walshprime/arithmetic.hpp"
#include "walshprime/cube.hpp"
#include "walshprime/lambda_tilde.hpp"
#include "walshprime/monotone.hpp"
#include "walshprime/oracle.hpp"

namespace walshprime {

bool VerifyResult::ok() const noexcept { return failures() == 0; }

std::size_t VerifyResult::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

std::string VerifyResult::to_json() const {
  nlohmann::json doc;
  doc["level"] = level == VerifyLevel::quick ? "quick" : "full";
  doc["passed"] = checks.size() - failures();
  doc["failed"] = failures();
  auto& list = doc["checks"] = nlohmann::json::array();
  auto& failed = doc["failures"] = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"seconds", c.seconds}});
    if (!c.passed) failed.push_back(c.name);
  }
  return doc.dump(2);
}

namespace {

using Transform = std::function<Spectrum(const CubeVector&)>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CubeVector random_vector(unsigned n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(cube_size(n));
  for (double& v : values) v = dist(rng);
  return CubeVector(n, std::move(values));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

class Suite {
 public:
  explicit Suite(VerifyResult& result) : result_(result) {}

  // `body` returns an empty string on success, a failure description otherwise.
  void run(const std::string& name, const std::function<std::string()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult c{name, false, {}, 0.0};
    try {
      c.detail = body();
      c.passed = c.detail.empty();
      if (c.passed) c.detail = "ok";
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result_.checks.push_back(std::move(c));
  }

 private:
  VerifyResult& result_;
};

}  // namespace

VerifyResult run_verification(const VerifyOptions& options) {
  VerifyResult result;
  result.level = options.level;
  const bool full = options.level == VerifyLevel::full;
  Suite suite(result);

  const Transform transform = [&](const CubeVector& f) {
    Spectrum s = wht_forward(f);
    if (options.invert_sign_convention)
      for (std::size_t mask = 0; mask < s.size(); ++mask)
        if (popcount(mask) & 1) s[mask] = -s[mask];
    return s;
  };

  const unsigned direct_max = full ? 10 : 8;
  const unsigned oracle_n = full ? 12 : 10;
  const std::vector<unsigned> zoo_ns = full ? std::vector<unsigned>{12, 16, 20} : std::vector<unsigned>{8, 10, 12};

  suite.run("wht_matches_direct_sum", [&]() -> std::string {
    std::mt19937_64 rng(options.seed);
    for (unsigned n = 1; n <= direct_max; ++n) {
      const auto f = random_vector(n, rng);
      const auto fast = transform(f);
      const auto slow = oracle::direct_wht(f.values());
      const double err = max_abs_diff(fast.values(), slow);
      if (err >= 1e-12) return "n=" + std::to_string(n) + " max error " + fmt(err);
    }
    return {};
  });

  suite.run("wht_round_trip_and_parseval", [&]() -> std::string {
    std::mt19937_64 rng(options.seed + 1);
    const unsigned n = full ? 20 : 12;
    const auto f = random_vector(n, rng);
    const auto s = transform(f);
    const auto back = wht_inverse(s);
    const double err = max_abs_diff(back.values(), f.values());
    if (err >= 1e-10) return "round trip error " + fmt(err);
    const double energy = spectral_energy(s);
    const double direct = inner_product(f, f).normalized;
    if (std::abs(energy - direct) > 1e-10 * direct) return "Parseval mismatch " + fmt(energy) + " vs " + fmt(direct);
    return {};
  });

  suite.run("sieve_matches_trial_division", [&]() -> std::string {
    const unsigned n = full ? 16 : 12;
    const auto table = sieve_von_mangoldt(n);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
      const double expected = oracle::trial_division_lambda(x);
      if ((expected > 0.0) != (table[x] > 0.0) || std::abs(expected - table[x]) > 1e-12)
        return "x=" + std::to_string(x) + " sieve " + fmt(table[x]) + " oracle " + fmt(expected);
    }
    return {};
  });

  suite.run("chebyshev_psi_matches_prime_list", [&]() -> std::string {
    const unsigned n = full ? 20 : 12;
    const auto table = sieve_von_mangoldt(n);
    const std::uint64_t u = table.size() - 1;
    const auto primes = oracle::primes_by_trial_division(u);
    const double psi = chebyshev_psi(table, u);
    const double expected = oracle::psi_from_primes(primes, u);
    if (std::abs(psi - expected) > 1e-6) return "psi " + fmt(psi) + " vs oracle " + fmt(expected);
    if (full) {
      const double ratio = psi / static_cast<double>(table.size());
      if (ratio < 0.99 || ratio > 1.01) return "psi(2^20)/2^20 = " + fmt(ratio);
    }
    return {};
  });

  suite.run("lambda_tilde_matches_scatter", [&]() -> std::string {
    const auto table = sieve_von_mangoldt(oracle_n);
    const auto lt = build_lambda_tilde(table);
    const auto expected = oracle::scatter_lambda_tilde(table.values().values());
    const double err = max_abs_diff(lt.values().values(), expected);
    if (err > 1e-12) return "max error " + fmt(err);
    return {};
  });

  suite.run("lambda_tilde_spectrum_identity", [&]() -> std::string {
    for (unsigned n : {oracle_n - 2, oracle_n}) {
      const auto table = sieve_von_mangoldt(n);
      const auto via_identity = lambda_tilde_spectrum_via_identity(transform(table.values()));
      const auto via_transform = transform(build_lambda_tilde(table).values());
      const double err = max_abs_diff(via_identity.values(), via_transform.values());
      if (err >= 1e-9) return "n=" + std::to_string(n) + " max error " + fmt(err);
    }
    return {};
  });

  suite.run("lambda_tilde_mass_identity", [&]() -> std::string {
    for (unsigned n = 2; n <= (full ? 20u : 12u); ++n) {
      const auto table = sieve_von_mangoldt(n);
      const auto lt = build_lambda_tilde(table);
      double mass = 0.0;
      for (double v : lt.values().values()) mass += v;
      const double expected = popcount_weighted_mass(table);
      if (std::abs(mass - expected) > 1e-9 * expected)
        return "n=" + std::to_string(n) + " |LambdaTilde|_1 " + fmt(mass) + " vs " + fmt(expected);
    }
    return {};
  });

  suite.run("zoo_is_monotone", [&]() -> std::string {
    for (unsigned n : zoo_ns) {
      for (bool odd : {false, true}) {
        for (const auto& spec : default_zoo(n, odd, options.seed)) {
          const auto v = monotonicity_check(materialize(spec), MonotonicityMode::automatic(n, options.seed));
          if (!v.monotone) return spec.to_string() + " at n=" + std::to_string(n) + " is not monotone";
        }
      }
    }
    return {};
  });

  suite.run("influence_identity", [&]() -> std::string {
    for (unsigned n : {oracle_n - 2, oracle_n}) {
      for (bool odd : {false, true}) {
        for (const auto& spec : default_zoo(n, odd, options.seed)) {
          const auto check = influence_identity_check(transform(materialize(spec)));
          if (!check.holds())
            return spec.to_string() + " at n=" + std::to_string(n) + ": gap " + fmt(check.gap) +
                   ", max degree-1 coefficient " + fmt(check.max_degree1);
        }
      }
    }
    return {};
  });

  suite.run("tail_bound", [&]() -> std::string {
    for (unsigned n : zoo_ns) {
      for (const auto& spec : default_zoo(n, false, options.seed)) {
        const auto s = transform(materialize(spec));
        for (double K : {1.0, 2.0, 4.0}) {
          const auto r = tail_report(s, K);
          if (!r.within_bound())
            return spec.to_string() + " n=" + std::to_string(n) + " K=" + fmt(K) + ": tail " + fmt(r.tail) +
                   " > " + fmt(r.bound);
          if (r.tail > r.total_influence_fw / r.cutoff + 1e-12)
            return spec.to_string() + " n=" + std::to_string(n) + ": Markov consistency violated";
        }
      }
    }
    return {};
  });

  suite.run("decomposition_identity", [&]() -> std::string {
    const std::vector<unsigned> ns = full ? std::vector<unsigned>{16, 20} : std::vector<unsigned>{10, 12};
    for (unsigned n : ns) {
      Pipeline pipeline(sieve_von_mangoldt(n));
      for (const auto& spec : default_zoo(n, true, options.seed)) {
        const auto f = materialize(spec);
        if (std::all_of(f.values().begin(), f.values().end(), [](double v) { return v == 0.0; })) continue;
        const auto r = correlate(f, pipeline, {.K = 4.0, .attested = true});
        const std::string where = spec.to_string() + " n=" + std::to_string(n);
        if (!r.decomposition_holds()) return where + ": residual " + fmt(r.decomposition_residual);
        if (!r.cauchy_schwarz_holds()) return where + ": |high_term| above Cauchy-Schwarz bound";
        if (!r.ineq32_holds()) return where + ": pairing with LambdaTilde exceeds n <Lambda, f>";
      }
    }
    return {};
  });

  if (full) {
    suite.run("theorem_ratio_desk_check", [&]() -> std::string {
      const unsigned n = 20;
      Pipeline pipeline(sieve_von_mangoldt(n));
      for (const auto& spec : default_zoo(n, true, options.seed)) {
        const auto f = materialize(spec);
        const auto r = correlate(f, pipeline, {.K = 4.0, .attested = true});
        if (r.mean_f >= 0.05 && r.theorem_ratio < 0.9)
          return spec.to_string() + ": theorem ratio " + fmt(r.theorem_ratio);
      }
      return {};
    });
  }
  return result;
}

}  // namespace walshprime
