#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace wmix {

/// Standard normal distribution function Phi.
inline double std_normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double std_normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Half-normal distribution function Psi(x) = 2 Phi(max(0, x)) - 1 = P(|X| < x).
inline double half_normal_cdf(double x) noexcept {
  return x <= 0.0 ? 0.0 : std::erf(x / std::numbers::sqrt2);
}

/// Euler gamma function. Throws at the poles 0, -1, -2, ...
inline double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma_fn: pole at nonpositive integer");
  return std::tgamma(x);
}

}  // namespace wmix
