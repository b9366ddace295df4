#pragma once

// Product and mixture representations of Weibull-type variables, and the
// mixing law H_gamma of 2 W1 V_gamma^2.
//
// Throughout, X is standard normal, W1 standard exponential, V_gamma = 1/S
// with S the Laplace-standard one-sided stable variable (see stable.hpp), all
// independent.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "special.hpp"
#include "stable.hpp"
#include "weibull.hpp"

namespace wmix {

// ---------------------------------------------------------------------------
// Alternate samplers of W_gamma

/// sqrt(2 W1) |X|, distributed as W1.
inline double sample_w1_product(RandomStream& rng) {
  const double w = rng.exponential();
  return std::sqrt(2.0 * w) * std::abs(rng.normal());
}

/// |X| sqrt(W1), exponential with rate sqrt(2).
inline double sample_halfnormal_sqrt_exponential(RandomStream& rng) {
  const double w = rng.exponential();
  return std::abs(rng.normal()) * std::sqrt(w);
}

/// Rayleigh draw times sqrt(V_{gamma/2}), 0 < gamma <= 2.
inline double sample_weibull_via_rayleigh(double gamma, RandomStream& rng) {
  detail::require(gamma > 0.0 && gamma <= 2.0, "Rayleigh mixture requires 0 < gamma <= 2");
  const double rayleigh = sample_weibull(WeibullLaw(2.0), rng);
  return rayleigh * std::sqrt(sample_v_gamma(StableShape(gamma / 2.0), rng));
}

/// W1 V_gamma, 0 < gamma <= 1.
inline double sample_weibull_via_mixed_exponential(double gamma, RandomStream& rng) {
  detail::require(gamma > 0.0 && gamma <= 1.0, "mixed-exponential form requires 0 < gamma <= 1");
  const double w = rng.exponential();
  return w * sample_v_gamma(StableShape(gamma), rng);
}

/// |X| sqrt(2 W1 V_gamma^2), 0 < gamma <= 1.
inline double sample_weibull_via_halfnormal(double gamma, RandomStream& rng) {
  detail::require(gamma > 0.0 && gamma <= 1.0, "half-normal mixture requires 0 < gamma <= 1");
  const double x = std::abs(rng.normal());
  const double w = rng.exponential();
  const double v = sample_v_gamma(StableShape(gamma), rng);
  return x * v * std::sqrt(2.0 * w);
}

/// W_delta V_alpha^(1/delta) with alpha = gamma/delta, delta > gamma > 0.
inline double sample_weibull_via_weibull(double gamma, double delta, RandomStream& rng) {
  detail::require(gamma > 0.0 && delta > gamma, "Weibull mixture requires delta > gamma > 0");
  const double w = sample_weibull(WeibullLaw(delta), rng);
  const double v = sample_v_gamma(StableShape(gamma / delta), rng);
  return w * std::pow(v, 1.0 / delta);
}

// ---------------------------------------------------------------------------
// Mixing law H_gamma(y) = P(2 W1 V_gamma^2 < y) = 1 - E exp(-y S^2 / 2)

class MixingLawH {
 public:
  explicit MixingLawH(double gamma) : stable_(gamma) {}
  double gamma() const noexcept { return stable_.gamma(); }
  const StableShape& stable() const noexcept { return stable_; }

 private:
  StableShape stable_;
};

/// Quadrature accuracy used for H_gamma evaluations.
inline QuadratureOptions h_gamma_quadrature_options() { return {1e-14, 1e-8, 4000}; }

/// 1 - H_gamma(y) = E exp(-y S^2 / 2), accurate in the far tail.
inline double h_gamma_survival(const MixingLawH& law, double y,
                               const QuadratureOptions& opt = h_gamma_quadrature_options()) {
  if (y <= 0.0) return 1.0;
  if (law.stable().degenerate()) return std::exp(-0.5 * y);
  return expect_positive_stable(law.stable(), [y](double s) { return std::exp(-0.5 * y * s * s); },
                                opt)
      .value;
}

/// H_gamma(y) = E[1 - exp(-y S^2 / 2)]; accurate near y = 0 as well.
inline double h_gamma_cdf(const MixingLawH& law, double y,
                          const QuadratureOptions& opt = h_gamma_quadrature_options()) {
  if (y <= 0.0) return 0.0;
  if (law.stable().degenerate()) return -std::expm1(-0.5 * y);
  return expect_positive_stable(law.stable(), [y](double s) { return -std::expm1(-0.5 * y * s * s); },
                                opt)
      .value;
}

/// h_gamma(y) = E[(S^2/2) exp(-y S^2 / 2)], y > 0. Diverges like y^(gamma/2 - 1) at 0.
inline double h_gamma_density(const MixingLawH& law, double y,
                              const QuadratureOptions& opt = h_gamma_quadrature_options()) {
  detail::require(y > 0.0, "h_gamma_density requires y > 0");
  if (law.stable().degenerate()) return 0.5 * std::exp(-0.5 * y);
  return expect_positive_stable(
             law.stable(), [y](double s) { return 0.5 * s * s * std::exp(-0.5 * y * s * s); }, opt)
      .value;
}

/// 2 W1 V_gamma^2.
inline double sample_h_gamma(const MixingLawH& law, RandomStream& rng) {
  const double w = rng.exponential();
  const double v = sample_v_gamma(law.stable(), rng);
  return 2.0 * w * v * v;
}

/// Analytic tail exponent rho = gamma/(2-gamma) in 1 - H_gamma(y) ~ exp(-y^rho / 2).
inline double h_gamma_tail_exponent(double gamma) {
  detail::require(gamma > 0.0 && gamma <= 1.0, "h_gamma_tail_exponent requires 0 < gamma <= 1");
  return gamma / (2.0 - gamma);
}

struct TailExponentFit {
  double analytic = 0.0;
  double fitted = 0.0;
  double y_lo = 0.0;  // 1 - H = survival_hi
  double y_hi = 0.0;  // 1 - H = survival_lo
  std::vector<double> y;
  std::vector<double> survival;

  double relative_error() const { return std::abs(fitted / analytic - 1.0); }
};

/// Least-squares slope of log(-log(1 - H_gamma(y))) against log y over the
/// window where 1 - H_gamma runs from survival_hi down to survival_lo.
inline TailExponentFit h_gamma_tail_fit(double gamma, double survival_lo = 1e-6,
                                        double survival_hi = 1e-3, int points = 20) {
  detail::require(points >= 2, "h_gamma_tail_fit requires at least two points");
  const MixingLawH law(gamma);
  TailExponentFit fit;
  fit.analytic = h_gamma_tail_exponent(gamma);

  // log survival is decreasing in log y; bracket and bisect.
  auto solve = [&](double level) {
    double lo = 0.0;
    double hi = 1.0;
    while (h_gamma_survival(law, std::exp(hi)) > level) {
      lo = hi;
      hi *= 2.0;
      if (hi > 200.0) throw NumericFailure("h_gamma_tail_fit: tail window not bracketed", hi);
    }
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (h_gamma_survival(law, std::exp(mid)) > level ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
  };
  fit.y_lo = solve(survival_hi);
  fit.y_hi = solve(survival_lo);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    const double ly = std::log(fit.y_lo) +
                      (std::log(fit.y_hi) - std::log(fit.y_lo)) * i / static_cast<double>(points - 1);
    const double y = std::exp(ly);
    const double s = h_gamma_survival(law, y);
    fit.y.push_back(y);
    fit.survival.push_back(s);
    const double v = std::log(-std::log(s));
    sx += ly;
    sy += v;
    sxx += ly * ly;
    sxy += ly * v;
  }
  const double n = points;
  fit.fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

// ---------------------------------------------------------------------------
// Symmetric two-sided Weibull as mixtures

/// X sqrt(2 W1 V_gamma^2), 0 < gamma <= 1.
inline double sample_two_sided_via_normal_mixture(double gamma, RandomStream& rng) {
  detail::require(gamma > 0.0 && gamma <= 1.0, "normal mixture requires 0 < gamma <= 1");
  const double x = rng.normal();
  return x * std::sqrt(sample_h_gamma(MixingLawH(gamma), rng));
}

/// Laplace draw times V_gamma, 0 < gamma <= 1.
inline double sample_two_sided_via_laplace(double gamma, RandomStream& rng) {
  detail::require(gamma > 0.0 && gamma <= 1.0, "Laplace mixture requires 0 < gamma <= 1");
  const double laplace = sample_two_sided(TwoSidedWeibullLaw(1.0), rng);
  return laplace * sample_v_gamma(StableShape(gamma), rng);
}

/// Two-sided W_delta draw times V_alpha^(1/delta), alpha = gamma/delta, delta > gamma > 0.
inline double sample_two_sided_via_two_sided(double gamma, double delta, RandomStream& rng) {
  detail::require(gamma > 0.0 && delta > gamma, "two-sided mixture requires delta > gamma > 0");
  const double w = sample_two_sided(TwoSidedWeibullLaw(delta), rng);
  const double v = sample_v_gamma(StableShape(gamma / delta), rng);
  return w * std::pow(v, 1.0 / delta);
}

/// int_0^inf Phi(x / sqrt(y)) dH_gamma(y) by quadrature. Integration by parts
/// with r = |x| / sqrt(y) turns it into 1/2 + int_0^inf H_gamma(x^2/r^2) phi(r) dr
/// for x > 0; negative x follow by symmetry.
inline double normal_scale_mixture_cdf(double gamma, double x,
                                       const QuadratureOptions& inner = {1e-12, 1e-7, 4000}) {
  if (x == 0.0) return 0.5;
  const MixingLawH law(gamma);
  const double ax = std::abs(x);
  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double w = std_normal_pdf(r);
    if (w == 0.0) return 0.0;
    return h_gamma_cdf(law, ax * ax / (r * r), inner) * w;
  };
  const double upper = adaptive_quadrature(integrand, 0.0, INFINITY, {1e-10, 1e-7, 2000}).value;
  const double f = 0.5 + upper;
  return x > 0.0 ? f : 1.0 - f;
}

}  // namespace wmix
