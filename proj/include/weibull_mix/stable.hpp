#pragma once

// One-sided and symmetric strictly stable laws.
//
// Internally every one-sided stable variable is the Laplace-standard S with
// E exp(-s S) = exp(-s^gamma). The other conventions in this library are
//   S_{gamma,1} = 2 S   (E exp(-s S_{gamma,1}) = exp(-(2s)^gamma))
//   V_gamma = 2 / S_{gamma,1} = 1 / S.

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "special.hpp"

namespace wmix {

/// Exponent gamma of a one-sided strictly stable law, 0 < gamma <= 1.
class StableShape {
 public:
  explicit StableShape(double gamma) : gamma_(gamma) {
    detail::require(gamma > 0.0 && gamma <= 1.0,
                    "stable shape requires 0 < gamma <= 1, got " + std::to_string(gamma));
  }
  double gamma() const noexcept { return gamma_; }
  bool degenerate() const noexcept { return gamma_ == 1.0; }

 private:
  double gamma_;
};

/// Characteristic exponent alpha of a symmetric strictly stable law,
/// CF exp(-|t|^alpha), 0 < alpha <= 2.
class SymmetricStableShape {
 public:
  explicit SymmetricStableShape(double alpha) : alpha_(alpha) {
    detail::require(alpha > 0.0 && alpha <= 2.0,
                    "symmetric stable shape requires 0 < alpha <= 2, got " + std::to_string(alpha));
  }
  double alpha() const noexcept { return alpha_; }
  /// Shape of the one-sided law that mixes the normal variance.
  StableShape mixing_shape() const { return StableShape(alpha_ / 2.0); }

 private:
  double alpha_;
};

namespace detail {

/// log of Kanter's function
///   A(u) = sin(g u)^(g/(1-g)) sin((1-g) u) / sin(u)^(1/(1-g)),  0 < u < pi.
/// A increases from g^(g/(1-g)) (1-g) at 0+ to +inf at pi-.
inline double kanter_log_a(double g, double u) {
  const double q = 1.0 / (1.0 - g);
  return g * q * std::log(std::sin(g * u)) + std::log(std::sin((1.0 - g) * u)) -
         q * std::log(std::sin(u));
}

/// Point in (0, pi) where kanter_log_a equals `level`, clamped to the ends.
inline double kanter_solve(double g, double level) {
  double lo = 0.0;
  double hi = std::numbers::pi;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kanter_log_a(g, mid) < level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline QuadratureOptions stable_quadrature_options() {
  QuadratureOptions opt;
  opt.abs_tol = 1e-300;
  opt.rel_tol = 1e-10;
  return opt;
}

/// (1/pi) int_0^pi kernel(A(u) x^-p) du with p = g/(1-g), split at the point
/// where A(u) x^-p = 1 (the peak of z e^-z).
template <class Kernel>
QuadratureResult kanter_integral(double g, double x, const Kernel& kernel) {
  const double p = g / (1.0 - g);
  const double shift = p * std::log(x);
  auto integrand = [&](double u) { return kernel(std::exp(kanter_log_a(g, u) - shift)); };
  const double peak = kanter_solve(g, shift);
  const double edges[] = {0.0, peak, std::numbers::pi};
  auto r = adaptive_quadrature_panels(integrand, edges, stable_quadrature_options());
  r.value /= std::numbers::pi;
  r.error /= std::numbers::pi;
  return r;
}

}  // namespace detail

/// One draw of S with E exp(-s S) = exp(-s^gamma) (Kanter's construction).
/// gamma = 1 is the point mass at 1 and consumes no randomness.
inline double sample_positive_stable_std(const StableShape& shape, RandomStream& rng) {
  if (shape.degenerate()) return 1.0;
  const double g = shape.gamma();
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  return std::exp((detail::kanter_log_a(g, u) - std::log(e)) * (1.0 - g) / g);
}

/// V_gamma = 1 / S; consumes the stream exactly like sample_positive_stable_std.
inline double sample_v_gamma(const StableShape& shape, RandomStream& rng) {
  return 1.0 / sample_positive_stable_std(shape, rng);
}

/// Density of S at x > 0, with the quadrature error estimate.
inline QuadratureResult density_positive_stable_with_error(const StableShape& shape, double x) {
  if (shape.degenerate()) throw DegenerateLawError("density_positive_stable: gamma = 1 is a point mass");
  detail::require(x > 0.0, "density_positive_stable: x must be positive");
  const double g = shape.gamma();
  const double p = g / (1.0 - g);
  auto r = detail::kanter_integral(g, x, [](double z) { return z * std::exp(-z); });
  r.value *= p / x;
  r.error *= p / x;
  return r;
}

/// Density of S at x > 0. Throws NumericFailure if quadrature does not converge.
inline double density_positive_stable(const StableShape& shape, double x) {
  return density_positive_stable_with_error(shape, x).value;
}

/// P(S <= x), the integral of density_positive_stable from 0 to x.
inline double cdf_positive_stable(const StableShape& shape, double x) {
  if (x <= 0.0) return 0.0;
  if (shape.degenerate()) return x >= 1.0 ? 1.0 : 0.0;
  return detail::kanter_integral(shape.gamma(), x, [](double z) { return std::exp(-z); }).value;
}

/// P(S > x), accurate in the upper tail.
inline double survival_positive_stable(const StableShape& shape, double x) {
  if (x <= 0.0) return 1.0;
  if (shape.degenerate()) return x >= 1.0 ? 0.0 : 1.0;
  return detail::kanter_integral(shape.gamma(), x, [](double z) { return -std::expm1(-z); }).value;
}

/// E phi(S) by quadrature over the Kanter representation
///   S = (A(u) / t)^((1-g)/g),  u ~ U(0, pi),  t ~ Exp(1),
/// i.e. (1/pi) int_0^pi int_0^inf e^-t phi((A(u)/t)^((1-g)/g)) dt du.
/// phi must be bounded and measurable on (0, inf).
template <class Phi>
QuadratureResult expect_positive_stable(const StableShape& shape, const Phi& phi,
                                        const QuadratureOptions& outer = {1e-14, 1e-8, 4000}) {
  if (shape.degenerate()) return {phi(1.0), 0.0};
  const double g = shape.gamma();
  const double power = (1.0 - g) / g;
  QuadratureOptions inner = outer;
  inner.rel_tol = outer.rel_tol * 1e-2;
  inner.abs_tol = outer.abs_tol * 1e-2;
  auto over_t = [&](double u) {
    const double log_a = detail::kanter_log_a(g, u);
    auto integrand = [&](double t) {
      if (t <= 0.0) return 0.0;
      const double w = std::exp(-t);
      if (w == 0.0) return 0.0;
      return w * phi(std::exp((log_a - std::log(t)) * power));
    };
    return adaptive_quadrature(integrand, 0.0, INFINITY, inner).value;
  };
  auto r = adaptive_quadrature(over_t, 0.0, std::numbers::pi, outer);
  r.value /= std::numbers::pi;
  r.error /= std::numbers::pi;
  return r;
}

/// X sqrt(2 S') with S' ~ S(alpha/2); characteristic function exp(-|t|^alpha).
inline double sample_symmetric_stable(const SymmetricStableShape& shape, RandomStream& rng) {
  const double mix = sample_positive_stable_std(shape.mixing_shape(), rng);
  return rng.normal() * std::sqrt(2.0 * mix);
}

/// P(S_{alpha,0} <= x) = E Phi(x / sqrt(2 S')), S' ~ S(alpha/2).
inline double symmetric_stable_cdf(const SymmetricStableShape& shape, double x) {
  if (x == 0.0) return 0.5;
  return expect_positive_stable(shape.mixing_shape(),
                                [x](double s) { return std_normal_cdf(x / std::sqrt(2.0 * s)); })
      .value;
}

/// Density of S_{alpha,0}: E phi(x / sqrt(2 S')) / sqrt(2 S').
inline double symmetric_stable_pdf(const SymmetricStableShape& shape, double x) {
  return expect_positive_stable(shape.mixing_shape(),
                                [x](double s) {
                                  const double r = std::sqrt(2.0 * s);
                                  return std_normal_pdf(x / r) / r;
                                })
      .value;
}

/// E S_{gamma,1}^beta = 2^beta Gamma(1 - beta/gamma) / Gamma(1 - beta), 0 < beta < gamma < 1.
inline double moment_positive_stable(const StableShape& shape, double beta) {
  const double g = shape.gamma();
  detail::require(g < 1.0 && beta > 0.0 && beta < g,
                  "moment_positive_stable requires 0 < beta < gamma < 1");
  return std::pow(2.0, beta) * gamma_fn(1.0 - beta / g) / gamma_fn(1.0 - beta);
}

/// E |S_{alpha,0}|^beta for 0 < beta < alpha <= 2:
///   (2^beta / sqrt(pi)) Gamma((beta+1)/2) Gamma(1 - beta/alpha) / Gamma(1 - beta/2).
// Obtained from S_{alpha,0} = X sqrt(S_{alpha/2,1}) and the one-sided moment.
// A variant with Gamma((2-beta)/beta) in the denominator circulates; it
// matches neither this derivation nor E|Cauchy|^beta = 1/cos(pi beta/2).
inline double moment_symmetric_stable(const SymmetricStableShape& shape, double beta) {
  const double a = shape.alpha();
  detail::require(beta > 0.0 && beta < a, "moment_symmetric_stable requires 0 < beta < alpha <= 2");
  return std::pow(2.0, beta) / std::sqrt(std::numbers::pi) * gamma_fn(0.5 * (beta + 1.0)) *
         gamma_fn(1.0 - beta / a) / gamma_fn(1.0 - 0.5 * beta);
}

}  // namespace wmix
