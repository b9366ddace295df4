#pragma once

// One-sided Weibull law P(W < x) = 1 - exp(-x^gamma), x >= 0, and the
// symmetric two-sided law U W with U = +-1 equiprobable.

#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"
#include "rng.hpp"
#include "special.hpp"

namespace wmix {

class WeibullLaw {
 public:
  explicit WeibullLaw(double gamma) : gamma_(gamma) {
    detail::require(gamma > 0.0 && std::isfinite(gamma),
                    "Weibull shape requires gamma > 0, got " + std::to_string(gamma));
  }
  double gamma() const noexcept { return gamma_; }

 private:
  double gamma_;
};

class TwoSidedWeibullLaw {
 public:
  explicit TwoSidedWeibullLaw(double gamma) : gamma_(gamma) {
    detail::require(gamma > 0.0 && std::isfinite(gamma),
                    "two-sided Weibull shape requires gamma > 0, got " + std::to_string(gamma));
  }
  double gamma() const noexcept { return gamma_; }
  WeibullLaw magnitude() const { return WeibullLaw(gamma_); }

 private:
  double gamma_;
};

inline double weibull_cdf(const WeibullLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-std::pow(x, law.gamma()));
}

inline double weibull_survival(const WeibullLaw& law, double x) {
  if (x <= 0.0) return 1.0;
  return std::exp(-std::pow(x, law.gamma()));
}

/// gamma x^(gamma-1) exp(-x^gamma) for x > 0. At x = 0 the value is the
/// right limit: +infinity for gamma < 1, 1 for gamma = 1, 0 for gamma > 1.
inline double weibull_pdf(const WeibullLaw& law, double x) {
  const double g = law.gamma();
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (g < 1.0) return std::numeric_limits<double>::infinity();
    return g == 1.0 ? 1.0 : 0.0;
  }
  const double xg = std::pow(x, g);
  return g * xg / x * std::exp(-xg);
}

/// (-log(1 - p))^(1/gamma) for 0 < p < 1.
inline double weibull_quantile(const WeibullLaw& law, double p) {
  detail::require(p > 0.0 && p < 1.0, "weibull_quantile requires 0 < p < 1");
  return std::pow(-std::log1p(-p), 1.0 / law.gamma());
}

/// Inversion of one uniform: (-log U)^(1/gamma).
inline double sample_weibull(const WeibullLaw& law, RandomStream& rng) {
  return std::pow(-std::log(rng.uniform()), 1.0 / law.gamma());
}

/// Maps a W_{gamma'} draw to W_{gamma gamma'}: sample^(1/gamma).
inline double power_transform_identity(double gamma, double gamma_prime, double sample) {
  detail::require(gamma > 0.0 && gamma_prime > 0.0,
                  "power_transform_identity requires gamma > 0 and gamma' > 0");
  detail::require(sample >= 0.0, "power_transform_identity requires a nonnegative sample");
  if (gamma == 1.0) return sample;
  return std::pow(sample, 1.0 / gamma);
}

/// E W^delta = Gamma(1 + delta/gamma), delta > -gamma.
inline double weibull_moment(const WeibullLaw& law, double delta) {
  detail::require(delta > -law.gamma(), "weibull_moment requires delta > -gamma");
  return gamma_fn(1.0 + delta / law.gamma());
}

inline double two_sided_cdf(const TwoSidedWeibullLaw& law, double x) {
  const double tail = 0.5 * std::exp(-std::pow(std::abs(x), law.gamma()));
  return x < 0.0 ? tail : 1.0 - tail;
}

inline double two_sided_pdf(const TwoSidedWeibullLaw& law, double x) {
  return 0.5 * weibull_pdf(law.magnitude(), std::abs(x));
}

/// Sign times an independent W_gamma draw.
inline double sample_two_sided(const TwoSidedWeibullLaw& law, RandomStream& rng) {
  const double s = rng.sign();
  return s * sample_weibull(law.magnitude(), rng);
}

}  // namespace wmix
