#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <set>

#include "weibull_mix/verify.hpp"

namespace wmix {
namespace {

TEST(Verify, Registry) {
  const auto& checks = identity_checks();
  EXPECT_GE(checks.size(), 20u);
  std::set<std::string> ids;
  for (const auto& c : checks) EXPECT_TRUE(ids.insert(c.group + "/" + c.name).second) << c.name;
  const auto groups = verify_groups();
  EXPECT_NE(std::find(groups.begin(), groups.end(), "random-sum"), groups.end());
}

TEST(Verify, UnknownGroup) {
  VerifyOptions opt;
  opt.only = {"no-such-group"};
  EXPECT_THROW(run_verify(opt), DomainError);
}

TEST(Verify, OnlyFilter) {
  VerifyOptions opt;
  opt.only = {"asym-laplace"};
  const auto records = run_verify(opt);
  ASSERT_EQ(records.size(), 4u);
  for (const auto& r : records) {
    EXPECT_EQ(r.group, "asym-laplace");
    EXPECT_TRUE(r.pass) << r.name << " " << r.statistic;
  }
}

TEST(Verify, ResultsDoNotDependOnSelection) {
  VerifyOptions a;
  a.only = {"moments"};
  VerifyOptions b;
  b.only = {"two-sided", "moments"};
  const auto ra = run_verify(a);
  const auto rb = run_verify(b);
  ASSERT_EQ(rb.size(), ra.size() + 1);
  for (std::size_t i = 0; i < ra.size(); ++i) EXPECT_EQ(ra[i].statistic, rb[i + 1].statistic);
}

TEST(Verify, DeterministicBytesAcrossWorkers) {
  VerifyOptions a;
  a.only = {"product-identity", "moments"};
  a.n = 50000;
  a.moment_n = 200000;
  VerifyOptions b = a;
  b.workers = 3;
  const auto ta = to_string(verify_report(run_verify(a), a), OutputFormat::csv);
  EXPECT_EQ(ta, to_string(verify_report(run_verify(a), a), OutputFormat::csv));
  EXPECT_EQ(ta, to_string(verify_report(run_verify(b), b), OutputFormat::csv));
  VerifyOptions c = a;
  c.seed = a.seed + 1;
  EXPECT_NE(ta, to_string(verify_report(run_verify(c), c), OutputFormat::csv));
}

TEST(Verify, SeedEnvironment) {
  ::unsetenv(kSeedEnvVar);
  EXPECT_EQ(default_seed(), kDefaultSeed);
  ::setenv(kSeedEnvVar, "12345", 1);
  EXPECT_EQ(default_seed(), 12345u);
  ::setenv(kSeedEnvVar, "12x", 1);
  EXPECT_THROW(default_seed(), DomainError);
  ::unsetenv(kSeedEnvVar);
}

}  // namespace
}  // namespace wmix
