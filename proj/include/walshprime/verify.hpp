#pragma once

// Self-check suite run by `walshprime verify`: every module's invariants
// against the independent oracles, at desk-sized n.

#include <cstdint>
#include <string>
#include <vector>

namespace walshprime {

enum class VerifyLevel { quick, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  std::uint64_t seed = 20240917;
  // Mutation hook: flips the Walsh sign convention (eps_j = 2 x_j - 1) in
  // the transform used by the suite. A correct suite must then fail.
  bool invert_sign_convention = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyResult {
  VerifyLevel level = VerifyLevel::quick;
  std::vector<CheckResult> checks;

  bool ok() const noexcept;
  std::size_t failures() const noexcept;
  /// {"level":..., "passed":..., "failed":..., "checks":[...], "failures":[names]}
  std::string to_json() const;
};

VerifyResult run_verification(const VerifyOptions& options = {});

}  // namespace walshprime
