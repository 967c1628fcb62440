#include <gtest/gtest.h>

#include <algorithm>

#include "walshprime/verify.hpp"

using namespace walshprime;

TEST(Verify, QuickPasses) {
  const auto r = run_verification({.level = VerifyLevel::quick});
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(r.ok());
}

TEST(Verify, InvertedSignConventionIsCaught) {
  const auto r = run_verification({.level = VerifyLevel::quick, .invert_sign_convention = true});
  EXPECT_FALSE(r.ok());
  const auto influence = std::find_if(r.checks.begin(), r.checks.end(),
                                      [](const CheckResult& c) { return c.name == "influence_identity"; });
  ASSERT_NE(influence, r.checks.end());
  EXPECT_FALSE(influence->passed);
  EXPECT_NE(r.to_json().find("\"failures\""), std::string::npos);
}
