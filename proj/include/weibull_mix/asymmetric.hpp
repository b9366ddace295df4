#pragma once

// Asymmetric two-sided laws:
//  - asymmetric Laplace Lambda_{a1,a2} and its variance-mean normal mixture
//    form sigma sqrt(U) X + mu U, U ~ Exp(lambda);
//  - asymmetric Weibull of the first kind, with the branch-wise CDF
//      a1/(a1+a2) exp(-(a2|x|)^gamma)        x <= 0
//      1 - a2/(a1+a2) exp(-(a1 x)^gamma)     x > 0
//    realised as Lambda_{a1,a2} V_gamma;
//  - asymmetric Weibull of the second kind, the variance-mean mixture
//    int Phi((x - mu z)/(sigma sqrt z)) dH_gamma(z).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mixtures.hpp"
#include "montecarlo.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "special.hpp"
#include "stable.hpp"
#include "weibull.hpp"

namespace wmix {

/// a1: right-tail rate, a2: left-tail rate.
class AsymLaplaceLaw {
 public:
  AsymLaplaceLaw(double a1, double a2) : a1_(a1), a2_(a2) {
    detail::require(a1 > 0.0 && a2 > 0.0, "asymmetric Laplace requires a1 > 0 and a2 > 0");
  }
  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  /// P(Lambda > 0) = a2/(a1+a2).
  double right_mass() const noexcept { return a2_ / (a1_ + a2_); }

 private:
  double a1_;
  double a2_;
};

/// Parameters of sigma sqrt(U) X + mu U with U ~ Exp(lambda).
struct NvmParams {
  double mu = 0.0;
  double sigma = 1.0;
  double lambda = 1.0;

  NvmParams() = default;
  NvmParams(double mu_, double sigma_, double lambda_) : mu(mu_), sigma(sigma_), lambda(lambda_) {
    detail::require(sigma > 0.0 && lambda > 0.0 && std::isfinite(mu),
                    "variance-mean parameters require sigma > 0 and lambda > 0");
  }
};

inline double asym_laplace_cdf(const AsymLaplaceLaw& law, double x) {
  const double s = law.a1() + law.a2();
  if (x <= 0.0) return law.a1() / s * std::exp(law.a2() * x);
  return 1.0 - law.a2() / s * std::exp(-law.a1() * x);
}

inline double asym_laplace_pdf(const AsymLaplaceLaw& law, double x) {
  const double c = law.a1() * law.a2() / (law.a1() + law.a2());
  return x <= 0.0 ? c * std::exp(law.a2() * x) : c * std::exp(-law.a1() * x);
}

/// Characteristic function 1 / ((1 - i t / a1)(1 + i t / a2)).
inline std::complex<double> asym_laplace_cf(const AsymLaplaceLaw& law, double t) {
  const std::complex<double> i(0.0, 1.0);
  return 1.0 / ((1.0 - i * t / law.a1()) * (1.0 + i * t / law.a2()));
}

/// Characteristic function lambda / (lambda - i mu t + sigma^2 t^2 / 2).
inline std::complex<double> nvm_cf(const NvmParams& p, double t) {
  return p.lambda / std::complex<double>(p.lambda + 0.5 * p.sigma * p.sigma * t * t, -p.mu * t);
}

/// Rates of the asymmetric Laplace law of sigma sqrt(U) X + mu U:
///   a1 = 2 lambda / (sqrt(mu^2 + 2 lambda sigma^2) + mu)
///   a2 = 2 lambda / (sqrt(mu^2 + 2 lambda sigma^2) - mu)
/// so that a1 a2 = 2 lambda / sigma^2 and 1/a1 - 1/a2 = mu / lambda.
inline AsymLaplaceLaw nvm_to_rates(const NvmParams& p) {
  const double s2 = p.sigma * p.sigma;
  const double root = std::sqrt(p.mu * p.mu + 2.0 * p.lambda * s2);
  // Use (root - mu)(root + mu) = 2 lambda sigma^2 to avoid cancellation.
  if (p.mu >= 0.0) return {2.0 * p.lambda / (root + p.mu), (root + p.mu) / s2};
  return {(root - p.mu) / s2, 2.0 * p.lambda / (root - p.mu)};
}

struct VwRoots {
  double v = 0.0;  // 1 / a2
  double w = 0.0;  // 1 / a1
};

/// Positive solution of w - v = mu/lambda, v w = sigma^2 / (2 lambda).
inline VwRoots solve_vw(const NvmParams& p) {
  const double s2 = p.sigma * p.sigma;
  const double root = std::sqrt(p.mu * p.mu + 2.0 * p.lambda * s2);
  if (p.mu >= 0.0) {
    const double w = (root + p.mu) / (2.0 * p.lambda);
    return {s2 / (root + p.mu), w};
  }
  const double v = (root - p.mu) / (2.0 * p.lambda);
  return {v, s2 / (root - p.mu)};
}

/// Variance-mean parameters with lambda = 1 whose mixture is Lambda_{a1,a2}.
inline NvmParams nvm_witness(const AsymLaplaceLaw& law) {
  return {1.0 / law.a1() - 1.0 / law.a2(), std::sqrt(2.0 / (law.a1() * law.a2())), 1.0};
}

/// (sigma / sqrt(lambda)) X sqrt(W1) + mu W1 / lambda.
inline double sample_asym_laplace_nvm(const NvmParams& p, RandomStream& rng) {
  const double w = rng.exponential();
  const double x = rng.normal();
  return p.sigma / std::sqrt(p.lambda) * x * std::sqrt(w) + p.mu * w / p.lambda;
}

// ---------------------------------------------------------------------------
// First kind

class AsymWeibullILaw {
 public:
  AsymWeibullILaw(double a1, double a2, double gamma) : rates_(a1, a2), gamma_(gamma) {
    detail::require(gamma > 0.0 && gamma <= 1.0,
                    "asymmetric Weibull (first kind) requires 0 < gamma <= 1, got " +
                        std::to_string(gamma) + "; use asym_weibull1_formal_cdf for gamma > 1");
  }
  double a1() const noexcept { return rates_.a1(); }
  double a2() const noexcept { return rates_.a2(); }
  double gamma() const noexcept { return gamma_; }
  const AsymLaplaceLaw& rates() const noexcept { return rates_; }

 private:
  AsymLaplaceLaw rates_;
  double gamma_;
};

/// Branch-wise CDF for any gamma > 0. No sampler or mixture form exists for
/// gamma > 1.
inline double asym_weibull1_formal_cdf(double a1, double a2, double gamma, double x) {
  detail::require(a1 > 0.0 && a2 > 0.0 && gamma > 0.0,
                  "formal first-kind CDF requires a1, a2, gamma > 0");
  const double s = a1 + a2;
  if (x <= 0.0) return a1 / s * std::exp(-std::pow(a2 * std::abs(x), gamma));
  return 1.0 - a2 / s * std::exp(-std::pow(a1 * x, gamma));
}

inline double asym_weibull1_cdf(const AsymWeibullILaw& law, double x) {
  return asym_weibull1_formal_cdf(law.a1(), law.a2(), law.gamma(), x);
}

inline double asym_weibull1_pdf(const AsymWeibullILaw& law, double x) {
  const double s = law.a1() + law.a2();
  if (x <= 0.0) {
    return law.a1() / s * law.a2() * weibull_pdf(WeibullLaw(law.gamma()), law.a2() * std::abs(x));
  }
  return law.a2() / s * law.a1() * weibull_pdf(WeibullLaw(law.gamma()), law.a1() * x);
}

/// Mixture route: (sigma X sqrt(W1) + mu W1) V_gamma with the lambda = 1
/// witness of (a1, a2).
inline double sample_asym_weibull1(const AsymWeibullILaw& law, RandomStream& rng) {
  const double y = sample_asym_laplace_nvm(nvm_witness(law.rates()), rng);
  return y * sample_v_gamma(StableShape(law.gamma()), rng);
}

/// Sign-branch route: positive with probability a2/(a1+a2), magnitude
/// W_gamma / a1 on the right and W_gamma / a2 on the left.
inline double sample_asym_weibull1_direct(const AsymWeibullILaw& law, RandomStream& rng) {
  const bool right = rng.uniform() < law.rates().right_mass();
  const double w = sample_weibull(WeibullLaw(law.gamma()), rng);
  return right ? w / law.a1() : -w / law.a2();
}

// ---------------------------------------------------------------------------
// Second kind

class AsymWeibullIILaw {
 public:
  AsymWeibullIILaw(double mu, double sigma, double gamma) : mu_(mu), sigma_(sigma), mixing_(gamma) {
    detail::require(sigma > 0.0 && std::isfinite(mu),
                    "asymmetric Weibull (second kind) requires sigma > 0");
  }
  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double gamma() const noexcept { return mixing_.gamma(); }
  const MixingLawH& mixing() const noexcept { return mixing_; }

 private:
  double mu_;
  double sigma_;
  MixingLawH mixing_;
};

namespace detail {

/// P(mu Z + sigma sqrt(Z) X < x) for Z ~ Exp(rate s^2/2): the asymmetric
/// Laplace CDF with lambda = s^2/2, including the s -> 0 and s -> inf limits.
inline double conditional_laplace_cdf(double mu, double sigma, double s, double x) {
  const double lambda = 0.5 * s * s;
  if (lambda == 0.0) return mu > 0.0 ? 0.0 : (mu < 0.0 ? 1.0 : 0.5);
  if (!std::isfinite(lambda)) return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5);
  return asym_laplace_cdf(nvm_to_rates(NvmParams(mu, sigma, lambda)), x);
}

}  // namespace detail

/// Monte Carlo estimate of the second-kind CDF.
inline MeanEstimate asym_weibull2_cdf_mc(const AsymWeibullIILaw& law, double x, std::size_t n,
                                         const RandomStream& stream);

/// Second-kind CDF by quadrature. Conditioning on S, the mixing variable is
/// exponential with rate S^2/2, so the inner h_gamma integral is an asymmetric
/// Laplace CDF and only the stable expectation is left to quadrature.
/// On quadrature failure throws NumericFailure whose fallback() is a 10^5-draw
/// Monte Carlo estimate.
inline double asym_weibull2_cdf(const AsymWeibullIILaw& law, double x,
                                const QuadratureOptions& opt = h_gamma_quadrature_options()) {
  const double mu = law.mu();
  const double sigma = law.sigma();
  if (law.mixing().stable().degenerate()) return detail::conditional_laplace_cdf(mu, sigma, 1.0, x);
  try {
    return expect_positive_stable(
               law.mixing().stable(),
               [&](double s) { return detail::conditional_laplace_cdf(mu, sigma, s, x); }, opt)
        .value;
  } catch (const NumericFailure& e) {
    const auto mc = asym_weibull2_cdf_mc(law, x, 100000, RandomStream(0x5eedULL, 0xfa11ULL));
    throw NumericFailure("asym_weibull2_cdf: quadrature failed", e.residual(), mc.mean);
  }
}

/// Second-kind density, E[asymmetric Laplace density at lambda = S^2/2].
/// At x = 0 it is infinite for gamma < 1.
inline double asym_weibull2_pdf(const AsymWeibullIILaw& law, double x,
                                const QuadratureOptions& opt = h_gamma_quadrature_options()) {
  const double mu = law.mu();
  const double sigma = law.sigma();
  auto conditional = [&](double s) {
    const double lambda = 0.5 * s * s;
    if (lambda == 0.0 || !std::isfinite(lambda)) return 0.0;
    return asym_laplace_pdf(nvm_to_rates(NvmParams(mu, sigma, lambda)), x);
  };
  if (law.mixing().stable().degenerate()) return conditional(1.0);
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return expect_positive_stable(law.mixing().stable(), conditional, opt).value;
}

/// Independent route: int_0^inf Phi((x - mu z)/(sigma sqrt z)) h_gamma(z) dz
/// with the density itself evaluated by quadrature. Slow; meant for checking
/// asym_weibull2_cdf.
inline double asym_weibull2_cdf_via_density(const AsymWeibullIILaw& law, double x) {
  const double mu = law.mu();
  const double sigma = law.sigma();
  const QuadratureOptions inner{1e-13, 1e-8, 4000};
  auto kernel = [&](double z) {
    return std_normal_cdf((x - mu * z) / (sigma * std::sqrt(z))) * h_gamma_density(law.mixing(), z, inner);
  };
  // z = v^4 on [0, 1] tames the z^(gamma/2 - 1) singularity of h_gamma at 0.
  auto near = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double v2 = v * v;
    return kernel(v2 * v2) * 4.0 * v2 * v;
  };
  const QuadratureOptions outer{1e-9, 1e-7, 2000};
  return adaptive_quadrature(near, 0.0, 1.0, outer).value +
         adaptive_quadrature(kernel, 1.0, INFINITY, outer).value;
}

/// mu Z + sigma sqrt(Z) X with Z ~ H_gamma.
inline double sample_asym_weibull2(const AsymWeibullIILaw& law, RandomStream& rng) {
  const double z = sample_h_gamma(law.mixing(), rng);
  return law.mu() * z + law.sigma() * std::sqrt(z) * rng.normal();
}

inline MeanEstimate asym_weibull2_cdf_mc(const AsymWeibullIILaw& law, double x, std::size_t n,
                                         const RandomStream& stream) {
  return monte_carlo_cdf([&law](RandomStream& s) { return sample_asym_weibull2(law, s); }, x, n,
                         stream);
}

/// Quantile of the second kind by bisection on the quadrature CDF, to
/// `tolerance` in probability.
inline double asym_weibull2_quantile(const AsymWeibullIILaw& law, double p, double tolerance = 1e-6) {
  detail::require(p > 0.0 && p < 1.0, "asym_weibull2_quantile requires 0 < p < 1");
  double lo = -1.0;
  double hi = 1.0;
  while (asym_weibull2_cdf(law, lo) > p) {
    hi = lo;
    lo *= 2.0;
  }
  while (asym_weibull2_cdf(law, hi) < p) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = asym_weibull2_cdf(law, mid);
    if (std::abs(f - p) <= tolerance) return mid;
    (f < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Second-kind CDF tabulated on an asinh-spaced grid between the
/// tail_mass and 1 - tail_mass quantiles; dense near 0 where the density of
/// the mixture can be unbounded.
inline TabulatedCdf tabulate_asym_weibull2(const AsymWeibullIILaw& law, std::size_t nodes = 600,
                                           double tail_mass = 1e-7) {
  detail::require(nodes >= 2, "tabulate_asym_weibull2 requires >= 2 nodes");
  const double lo = asym_weibull2_quantile(law, tail_mass, tail_mass * 0.1);
  const double hi = asym_weibull2_quantile(law, 1.0 - tail_mass, tail_mass * 0.1);
  constexpr double kScale = 1e-3;
  const double ulo = std::asinh(lo / kScale);
  const double uhi = std::asinh(hi / kScale);
  std::vector<double> x(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    x[i] = kScale * std::sinh(ulo + (uhi - ulo) * static_cast<double>(i) / static_cast<double>(nodes - 1));
  }
  const QuadratureOptions opt{1e-12, 1e-7, 4000};
  return TabulatedCdf::from(std::move(x), [&](double v) { return asym_weibull2_cdf(law, v, opt); });
}

}  // namespace wmix
