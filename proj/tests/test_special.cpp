#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "weibull_mix/errors.hpp"
#include "weibull_mix/ks.hpp"
#include "weibull_mix/montecarlo.hpp"
#include "weibull_mix/special.hpp"

namespace wmix {
namespace {

TEST(Special, NormalCdf) {
  EXPECT_DOUBLE_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(1.959964), 0.975, 1e-6);
  EXPECT_NEAR(std_normal_cdf(-1.959964), 0.025, 1e-6);
}

TEST(Special, HalfNormalCdf) {
  EXPECT_EQ(half_normal_cdf(0.0), 0.0);
  EXPECT_EQ(half_normal_cdf(-1.0), 0.0);
  EXPECT_NEAR(half_normal_cdf(1.959964), 0.95, 1e-6);
}

TEST(Special, HalfNormalMatchesAbsNormalDraws) {
  const EmpiricalSample s(draw_ensemble(200000, RandomStream(3), [](RandomStream& r) { return std::abs(r.normal()); }));
  EXPECT_LT(ks_one_sample(s, half_normal_cdf).statistic, 0.01);
}

TEST(Special, GammaFunction) {
  EXPECT_NEAR(gamma_fn(1.0), 1.0, 1e-15);
  EXPECT_NEAR(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_NEAR(gamma_fn(5.0), 24.0, 1e-12);
  EXPECT_NEAR(gamma_fn(0.75), 1.225417, 1e-6);
  EXPECT_NEAR(gamma_fn(0.75) * gamma_fn(0.25), std::numbers::pi / std::sin(std::numbers::pi / 4.0), 1e-12);
}

TEST(Special, GammaPolesThrow) {
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-2.0), DomainError);
}

}  // namespace
}  // namespace wmix
