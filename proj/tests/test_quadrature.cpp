#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "weibull_mix/errors.hpp"
#include "weibull_mix/quadrature.hpp"

namespace wmix {
namespace {

TEST(Quadrature, Exponential) {
  const auto r = adaptive_quadrature([](double x) { return std::exp(-x); }, 0.0, INFINITY);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
  EXPECT_LE(std::abs(r.value - 1.0), std::max(r.error, 1e-15));
}

TEST(Quadrature, ProductIdentityIntegral) {
  const double x = 1.0;
  const auto r = adaptive_quadrature([x](double u) { return u == 0.0 ? 0.0 : std::exp(-u * u / 2.0 - x * x / (u * u)); },
                                     0.0, INFINITY);
  const double exact = std::sqrt(std::numbers::pi / 2.0) * std::exp(-std::numbers::sqrt2 * x);
  EXPECT_NEAR(r.value, exact, 1e-8);
  EXPECT_LE(std::abs(r.value - exact), std::max(r.error, 1e-15));
}

TEST(Quadrature, RayleighKernel) {
  const auto r = adaptive_quadrature([](double x) { return x * std::exp(-x * x / 2.0); }, 0.0, INFINITY);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
  EXPECT_LE(std::abs(r.value - 1.0), std::max(r.error, 1e-15));
}

TEST(Quadrature, FinitePanels) {
  const std::vector<double> edges{0.0, 1.0, 2.0, std::numbers::pi};
  const auto r = adaptive_quadrature_panels([](double x) { return std::sin(x); }, edges);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
}

TEST(Quadrature, BadLimits) {
  EXPECT_THROW(adaptive_quadrature([](double) { return 1.0; }, 1.0, 0.0), DomainError);
  EXPECT_THROW(adaptive_quadrature([](double) { return 1.0; }, -INFINITY, INFINITY), DomainError);
  EXPECT_EQ(adaptive_quadrature([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
}

TEST(Quadrature, NonConvergenceIsReported) {
  QuadratureOptions opt;
  opt.max_panels = 3;
  EXPECT_THROW(adaptive_quadrature([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt), NumericFailure);
}

}  // namespace
}  // namespace wmix
