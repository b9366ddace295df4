#include <gtest/gtest.h>

#include <vector>

#include "weibull_mix/errors.hpp"
#include "weibull_mix/ks.hpp"
#include "weibull_mix/montecarlo.hpp"

namespace wmix {
namespace {

TEST(Ks, QuantileSampleIsClose) {
  const std::size_t n = 1000;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  const auto r = ks_one_sample(EmpiricalSample(x), [](double u) { return u; });
  EXPECT_LE(r.statistic, 0.5 / static_cast<double>(n) + 1e-15);
}

TEST(Ks, IdenticalSamples) {
  const auto v = draw_ensemble(5000, RandomStream(1), [](RandomStream& s) { return s.normal(); });
  EXPECT_EQ(ks_two_sample(EmpiricalSample(v), EmpiricalSample(v)).statistic, 0.0);
}

TEST(Ks, UniformDraws) {
  const EmpiricalSample s(draw_ensemble(200000, RandomStream(2), [](RandomStream& r) { return r.uniform(); }));
  const auto r = ks_one_sample(s, [](double u) { return std::clamp(u, 0.0, 1.0); });
  EXPECT_LT(r.statistic, 0.01);
  EXPECT_TRUE(r.pass);
}

TEST(Ks, DisjointSamples) {
  const EmpiricalSample a(std::vector<double>{1, 2, 3});
  const EmpiricalSample b(std::vector<double>{4, 5});
  EXPECT_DOUBLE_EQ(ks_two_sample(a, b).statistic, 1.0);
}

TEST(Ks, TiesAreHandled) {
  const EmpiricalSample a(std::vector<double>{0, 0, 1, 1});
  const EmpiricalSample b(std::vector<double>{0, 1, 1, 1});
  EXPECT_DOUBLE_EQ(ks_two_sample(a, b).statistic, 0.25);
}

TEST(Ks, EmpiricalCdf) {
  const EmpiricalSample s(std::vector<double>{3, 1, 2});
  EXPECT_DOUBLE_EQ(s.cdf(0.5), 0.0);
  EXPECT_DOUBLE_EQ(s.cdf(2.0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.cdf(2.5), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.cdf(10.0), 1.0);
}

TEST(Ks, Thresholds) {
  EXPECT_NEAR(ks_one_sample_threshold(10000), 1.5 * 0.0136, 1e-12);
  EXPECT_NEAR(ks_two_sample_threshold(10000, 10000), 1.5 * 1.36 * std::sqrt(2e-4), 1e-12);
}

TEST(TabulatedCdf, InterpolatesAndInverts) {
  const auto t = TabulatedCdf::from({0.0, 1.0, 2.0}, [](double x) { return x / 2.0; });
  EXPECT_DOUBLE_EQ(t(0.5), 0.25);
  EXPECT_DOUBLE_EQ(t(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(t(5.0), 1.0);
  EXPECT_DOUBLE_EQ(t.quantile(0.75), 1.5);
  const auto lg = TabulatedCdf::from_log({1.0, 10.0, 100.0}, [](double x) { return std::log10(x) / 2.0; });
  EXPECT_NEAR(lg(std::sqrt(10.0)), 0.25, 1e-12);
  EXPECT_NEAR(lg.quantile(0.25), std::sqrt(10.0), 1e-12);
}

}  // namespace
}  // namespace wmix
