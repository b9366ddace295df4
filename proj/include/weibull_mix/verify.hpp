#pragma once

// Registry of identity checks: each check draws or integrates, compares against
// an oracle and records statistic, threshold and verdict. Every check owns the
// stream RandomStream(seed, hash(group/name)), so results do not depend on
// which other checks run or on the worker count.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "asymmetric.hpp"
#include "errors.hpp"
#include "ks.hpp"
#include "mixtures.hpp"
#include "montecarlo.hpp"
#include "randsum.hpp"
#include "report_io.hpp"
#include "rng.hpp"
#include "special.hpp"
#include "stable.hpp"
#include "version.hpp"
#include "weibull.hpp"

namespace wmix {

inline constexpr std::uint64_t kDefaultSeed = 20240531;
inline constexpr const char* kSeedEnvVar = "WEIBULL_MIX_SEED";

/// kDefaultSeed, or the decimal value of WEIBULL_MIX_SEED when set.
inline std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto res = std::from_chars(env, end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw DomainError(std::string(kSeedEnvVar) + " must be a nonnegative 64-bit integer, got '" + env + "'");
  }
  return v;
}

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t n = 200000;                  // KS sample size
  std::size_t moment_n = 1000000;          // Monte Carlo moment checks
  std::size_t randsum_ensemble = 100000;   // random-sum replicates
  unsigned workers = 1;
  std::vector<std::string> only;           // group filter; empty runs everything
};

struct VerifyRecord {
  std::string group;
  std::string name;
  std::string identity;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct CheckOutcome {
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct CheckContext {
  const VerifyOptions& opt;
  RandomStream stream;
};

struct IdentityCheck {
  std::string group;
  std::string name;
  std::string identity;
  std::function<CheckOutcome(const CheckContext&)> run;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline CheckOutcome below(double statistic, double threshold, std::string note = {}) {
  return {statistic, threshold, statistic < threshold, std::move(note)};
}

template <class Sampler>
EmpiricalSample draw(const CheckContext& c, std::size_t n, const RandomStream& s, Sampler&& f) {
  return EmpiricalSample(draw_ensemble(n, s, f, c.opt.workers));
}

template <class Sampler, class Cdf>
CheckOutcome ks_check(const CheckContext& c, Sampler&& f, const Cdf& cdf, double threshold) {
  const auto sample = draw(c, c.opt.n, c.stream, f);
  return below(ks_one_sample(sample, cdf).statistic, threshold);
}

template <class SamplerA, class SamplerB>
CheckOutcome ks2_check(const CheckContext& c, SamplerA&& fa, SamplerB&& fb, double threshold) {
  const auto a = draw(c, c.opt.n, c.stream.derive(0), fa);
  const auto b = draw(c, c.opt.n, c.stream.derive(1), fb);
  return below(ks_two_sample(a, b).statistic, threshold);
}

inline TabulatedCdf stable_cdf_table(double gamma) {
  const StableShape shape(gamma);
  double lo = 1.0;
  while (cdf_positive_stable(shape, lo) > 1e-10 && lo > 1e-30) lo *= 0.1;
  double hi = 1.0;
  while (survival_positive_stable(shape, hi) > 1e-7 && hi < 1e60) hi *= 10.0;
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(x.size() - 1));
  }
  return TabulatedCdf::from_log(std::move(x), [&shape](double v) { return cdf_positive_stable(shape, v); });
}

inline CheckOutcome relative_check(double estimate, double target, double threshold) {
  const double rel = std::abs(estimate / target - 1.0);
  return below(rel, threshold, "estimate " + format_number(estimate) + ", target " + format_number(target));
}

/// Largest increase along a sequence; 0 when nonincreasing.
inline double max_increase(const std::vector<double>& v) {
  double up = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) up = std::max(up, v[i] - v[i - 1]);
  return up;
}

inline std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
  return s;
}

inline double weibull_cdf_of(double gamma, double x) { return weibull_cdf(WeibullLaw(gamma), x); }

}  // namespace detail

/// All registered checks, in report order.
inline const std::vector<IdentityCheck>& identity_checks() {
  using detail::below;
  using detail::ks2_check;
  using detail::ks_check;
  static const std::vector<IdentityCheck> checks = [] {
    std::vector<IdentityCheck> v;
    auto add = [&v](std::string g, std::string n, std::string id, std::function<CheckOutcome(const CheckContext&)> f) {
      v.push_back({std::move(g), std::move(n), std::move(id), std::move(f)});
    };

    // -- product identities
    add("product-identity", "w1-product", "sqrt(2 W1) |X| ~ Exp(1)", [](const CheckContext& c) {
      return ks_check(c, sample_w1_product, [](double x) { return detail::weibull_cdf_of(1.0, x); }, 0.01);
    });
    add("product-identity", "halfnormal-sqrt-exponential", "|X| sqrt(W1) ~ 1 - exp(-sqrt(2) x)",
        [](const CheckContext& c) {
          return ks_check(c, sample_halfnormal_sqrt_exponential,
                          [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-std::numbers::sqrt2 * x); }, 0.01);
        });
    add("product-identity", "power-transform", "W1^(1/2) ~ W_2 and (W1^(1/2))^(1/2) ~ W_4",
        [](const CheckContext& c) {
          const auto a = ks_check(
              c, [](RandomStream& s) { return power_transform_identity(2.0, 1.0, s.exponential()); },
              [](double x) { return detail::weibull_cdf_of(2.0, x); }, 0.01);
          const CheckContext c2{c.opt, c.stream.derive(1)};
          const auto b = ks_check(
              c2,
              [](RandomStream& s) {
                return power_transform_identity(2.0, 2.0, power_transform_identity(2.0, 1.0, s.exponential()));
              },
              [](double x) { return detail::weibull_cdf_of(4.0, x); }, 0.01);
          return below(std::max(a.statistic, b.statistic), 0.01);
        });
    add("two-sided", "abs-value", "|U W_gamma| ~ W_gamma (gamma = 0.7), two-sample", [](const CheckContext& c) {
      return ks2_check(
          c, [](RandomStream& s) { return std::abs(sample_two_sided(TwoSidedWeibullLaw(0.7), s)); },
          [](RandomStream& s) { return sample_weibull(WeibullLaw(0.7), s); }, 0.012);
    });

    // -- stable laws
    add("stable", "levy-half", "S(1/2) ~ 1/(2 Z^2): P(S < x) = 2(1 - Phi(1/sqrt(2x)))", [](const CheckContext& c) {
      return ks_check(
          c, [](RandomStream& s) { return sample_positive_stable_std(StableShape(0.5), s); },
          [](double x) { return x <= 0.0 ? 0.0 : 2.0 * (1.0 - std_normal_cdf(1.0 / std::sqrt(2.0 * x))); }, 0.01);
    });
    add("stable", "laplace-transform",
        "E exp(-s S) = exp(-s^gamma), gamma in {0.3,0.5,0.7,0.9}, s in {0.25,1,4}; max z-score",
        [](const CheckContext& c) {
          double worst = 0.0;
          const std::array<double, 4> gammas{0.3, 0.5, 0.7, 0.9};
          for (std::size_t i = 0; i < gammas.size(); ++i) {
            const StableShape shape(gammas[i]);
            const auto draws = draw_ensemble(
                c.opt.moment_n, c.stream.derive(i),
                [&shape](RandomStream& s) { return sample_positive_stable_std(shape, s); }, c.opt.workers);
            for (double s : {0.25, 1.0, 4.0}) {
              const auto m = estimate_mean_of(draws, [s](double x) { return std::exp(-s * x); });
              worst = std::max(worst, m.z_score(std::exp(-std::pow(s, gammas[i]))));
            }
          }
          return below(worst, 4.0);
        });
    add("stable", "density-vs-sampler", "S(gamma) draws vs integrated density, gamma in {0.3,0.5,0.7}",
        [](const CheckContext& c) {
          double worst = 0.0;
          const std::array<double, 3> gammas{0.3, 0.5, 0.7};
          for (std::size_t i = 0; i < gammas.size(); ++i) {
            const StableShape shape(gammas[i]);
            const auto cdf = detail::stable_cdf_table(gammas[i]);
            const auto sample = detail::draw(c, 100000, c.stream.derive(i), [&shape](RandomStream& s) {
              return sample_positive_stable_std(shape, s);
            });
            worst = std::max(worst, ks_one_sample(sample, cdf).statistic);
          }
          return below(worst, 0.01);
        });
    add("stable", "symmetric-cauchy", "X sqrt(2 S(1/2)) ~ Cauchy: 1/2 + atan(x)/pi", [](const CheckContext& c) {
      return ks_check(
          c, [](RandomStream& s) { return sample_symmetric_stable(SymmetricStableShape(1.0), s); },
          [](double x) { return 0.5 + std::atan(x) / std::numbers::pi; }, 0.01);
    });

    // -- Rayleigh mixture
    for (double g : {0.8, 1.0}) {
      add("rayleigh-mixture", "gamma-" + detail::format_number(g),
          "W_2 sqrt(V_{gamma/2}) ~ W_gamma, gamma = " + detail::format_number(g), [g](const CheckContext& c) {
            return ks_check(
                c, [g](RandomStream& s) { return sample_weibull_via_rayleigh(g, s); },
                [g](double x) { return detail::weibull_cdf_of(g, x); }, 0.01);
          });
    }

    // -- mixed exponential
    add("mixed-exponential", "gamma-0.5", "W1 V_gamma ~ W_gamma, gamma = 0.5", [](const CheckContext& c) {
      return ks_check(
          c, [](RandomStream& s) { return sample_weibull_via_mixed_exponential(0.5, s); },
          [](double x) { return detail::weibull_cdf_of(0.5, x); }, 0.01);
    });
    add("mixed-exponential", "conditional-rate",
        "P(W1 V_gamma > x) = E exp(-x S) by quadrature, gamma = 0.5, x in {0.5,1,2}; max abs error",
        [](const CheckContext& c) {
          const auto draws = draw_ensemble(
              c.opt.moment_n, c.stream, [](RandomStream& s) { return sample_weibull_via_mixed_exponential(0.5, s); },
              c.opt.workers);
          double worst = 0.0;
          for (double x : {0.5, 1.0, 2.0}) {
            const auto mc = estimate_mean_of(draws, [x](double w) { return w > x ? 1.0 : 0.0; });
            const double quad =
                expect_positive_stable(StableShape(0.5), [x](double s) { return std::exp(-x * s); }).value;
            worst = std::max(worst, std::abs(mc.mean - quad));
          }
          return below(worst, 0.005);
        });

    // -- half-normal mixture
    for (double g : {0.7, 0.3}) {
      add("halfnormal-mixture", "gamma-" + detail::format_number(g),
          "|X| sqrt(2 W1 V_gamma^2) ~ W_gamma, gamma = " + detail::format_number(g), [g](const CheckContext& c) {
            return ks_check(
                c, [g](RandomStream& s) { return sample_weibull_via_halfnormal(g, s); },
                [g](double x) { return detail::weibull_cdf_of(g, x); }, 0.01);
          });
    }

    // -- Weibull-of-Weibull mixture
    for (const auto& gd : std::array<std::array<double, 2>, 2>{{{0.5, 1.5}, {1.0, 2.0}}}) {
      const double g = gd[0];
      const double d = gd[1];
      add("weibull-mixture", "gamma-" + detail::format_number(g) + "-delta-" + detail::format_number(d),
          "W_delta V_{gamma/delta}^(1/delta) ~ W_gamma, (gamma, delta) = (" + detail::format_number(g) + ", " +
              detail::format_number(d) + ")",
          [g, d](const CheckContext& c) {
            return ks_check(
                c, [g, d](RandomStream& s) { return sample_weibull_via_weibull(g, d, s); },
                [g](double x) { return detail::weibull_cdf_of(g, x); }, 0.01);
          });
    }

    // -- all routes to W_gamma
    add("route-equivalence", "pairwise",
        "all samplers of W_gamma agree pairwise, gamma in {0.3,0.5,0.7,1}; max two-sample KS",
        [](const CheckContext& c) {
          double worst = 0.0;
          const std::array<double, 4> gammas{0.3, 0.5, 0.7, 1.0};
          for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
            const double g = gammas[gi];
            std::vector<std::function<double(RandomStream&)>> routes{
                [g](RandomStream& s) { return sample_weibull(WeibullLaw(g), s); },
                [g](RandomStream& s) { return sample_weibull_via_rayleigh(g, s); },
                [g](RandomStream& s) { return sample_weibull_via_mixed_exponential(g, s); },
                [g](RandomStream& s) { return sample_weibull_via_halfnormal(g, s); },
                [g](RandomStream& s) { return sample_weibull_via_weibull(g, 2.0 * g, s); },
            };
            std::vector<EmpiricalSample> samples;
            for (std::size_t r = 0; r < routes.size(); ++r) {
              samples.push_back(detail::draw(c, c.opt.n, c.stream.derive(10 * gi + r), routes[r]));
            }
            for (std::size_t a = 0; a < samples.size(); ++a) {
              for (std::size_t b = a + 1; b < samples.size(); ++b) {
                worst = std::max(worst, ks_two_sample(samples[a], samples[b]).statistic);
              }
            }
          }
          return below(worst, 0.012);
        });

    // -- mixing law H_gamma
    add("mixing-law", "quadrature-vs-sampler",
        "H_gamma quadrature vs empirical CDF of 2 W1 V_gamma^2, gamma = 0.5, y in {0.5,1,4}; max abs error",
        [](const CheckContext& c) {
          const MixingLawH h(0.5);
          const auto draws = draw_ensemble(
              c.opt.moment_n, c.stream, [&h](RandomStream& s) { return sample_h_gamma(h, s); }, c.opt.workers);
          double worst = 0.0;
          for (double y : {0.5, 1.0, 4.0}) {
            const auto mc = estimate_mean_of(draws, [y](double z) { return z < y ? 1.0 : 0.0; });
            worst = std::max(worst, std::abs(mc.mean - h_gamma_cdf(h, y)));
          }
          return below(worst, 0.005);
        });
    add("mixing-law", "sampler-ks", "2 W1 V_gamma^2 ~ H_gamma (quadrature table), gamma = 0.5",
        [](const CheckContext& c) {
          const MixingLawH h(0.5);
          const auto table = tabulate_h_gamma(h);
          return ks_check(c, [&h](RandomStream& s) { return sample_h_gamma(h, s); }, table, 0.01);
        });
    for (const auto& entry : std::array<std::pair<double, const char*>, 2>{{{0.5, "0.5"}, {2.0 / 3.0, "2/3"}}}) {
      const double g = entry.first;
      const std::string label = entry.second;
      add("mixing-law", "tail-exponent-" + label,
          "slope of log(-log(1 - H_gamma)) vs log y = gamma/(2 - gamma), gamma = " + label +
              "; relative error",
          [g](const CheckContext&) {
            const auto fit = h_gamma_tail_fit(g);
            return below(fit.relative_error(), 0.1,
                         "fitted " + detail::format_number(fit.fitted) + ", analytic " +
                             detail::format_number(fit.analytic));
          });
    }

    // -- symmetric two-sided law as normal mixture
    add("normal-mixture", "gamma-1-laplace", "X sqrt(2 W1) ~ Laplace", [](const CheckContext& c) {
      return ks_check(
          c, [](RandomStream& s) { return sample_two_sided_via_normal_mixture(1.0, s); },
          [](double x) { return two_sided_cdf(TwoSidedWeibullLaw(1.0), x); }, 0.01);
    });
    add("normal-mixture", "gamma-0.6", "X sqrt(2 W1 V_gamma^2) ~ two-sided W_gamma, gamma = 0.6",
        [](const CheckContext& c) {
          return ks_check(
              c, [](RandomStream& s) { return sample_two_sided_via_normal_mixture(0.6, s); },
              [](double x) { return two_sided_cdf(TwoSidedWeibullLaw(0.6), x); }, 0.01);
        });
    add("normal-mixture", "cdf-level",
        "int Phi(x/sqrt(y)) dH_gamma(y) = 1 - exp(-x^gamma)/2, gamma in {0.5,0.7}, x in {0.5,1,2}; max abs error",
        [](const CheckContext&) {
          double worst = 0.0;
          for (double g : {0.5, 0.7}) {
            for (double x : {0.5, 1.0, 2.0}) {
              worst = std::max(worst, std::abs(normal_scale_mixture_cdf(g, x) - two_sided_cdf(TwoSidedWeibullLaw(g), x)));
            }
          }
          return below(worst, 0.003);
        });

    // -- Laplace and two-sided mixtures
    add("laplace-mixture", "route-equivalence",
        "Laplace x V_gamma vs two-sided W_delta V_{gamma/delta}^(1/delta) with delta = 1, gamma = 0.5, two-sample", [](const CheckContext& c) {
          return ks2_check(
              c, [](RandomStream& s) { return sample_two_sided_via_laplace(0.5, s); },
              [](RandomStream& s) { return sample_two_sided_via_two_sided(0.5, 1.0, s); }, 0.012);
        });
    add("laplace-mixture", "gamma-0.8-delta-2", "two-sided W_delta V_{gamma/delta}^(1/delta) ~ two-sided W_gamma",
        [](const CheckContext& c) {
          return ks_check(
              c, [](RandomStream& s) { return sample_two_sided_via_two_sided(0.8, 2.0, s); },
              [](double x) { return two_sided_cdf(TwoSidedWeibullLaw(0.8), x); }, 0.01);
        });

    // -- moments
    add("moments", "positive-stable", "E (2S)^beta = 2^beta G(1 - beta/gamma)/G(1 - beta), (gamma, beta) = (0.5, 0.1)",
        [](const CheckContext& c) {
          const StableShape shape(0.5);
          const auto draws = draw_ensemble(
              c.opt.moment_n, c.stream,
              [&shape](RandomStream& s) { return std::pow(2.0 * sample_positive_stable_std(shape, s), 0.1); },
              c.opt.workers);
          return detail::relative_check(estimate_mean(draws).mean, moment_positive_stable(shape, 0.1), 0.01);
        });
    add("moments", "symmetric-stable",
        "E|S_{alpha,0}|^beta = 2^beta G((beta+1)/2) G(1 - beta/alpha) / (sqrt(pi) G(1 - beta/2)), (alpha, beta) = (1, 0.5)",
        [](const CheckContext& c) {
          const SymmetricStableShape shape(1.0);
          const auto draws = draw_ensemble(
              c.opt.moment_n, c.stream,
              [&shape](RandomStream& s) { return std::sqrt(std::abs(sample_symmetric_stable(shape, s))); },
              c.opt.workers);
          return detail::relative_check(estimate_mean(draws).mean, moment_symmetric_stable(shape, 0.5), 0.01);
        });
    add("moments", "weibull", "E W_gamma^delta = G(1 + delta/gamma), (gamma, delta) = (0.5, 1)",
        [](const CheckContext& c) {
          const WeibullLaw law(0.5);
          const auto draws = draw_ensemble(
              c.opt.moment_n, c.stream, [&law](RandomStream& s) { return sample_weibull(law, s); }, c.opt.workers);
          return detail::relative_check(estimate_mean(draws).mean, weibull_moment(law, 1.0), 0.01);
        });

    // -- asymmetric Laplace as variance-mean mixture
    for (auto p : std::array<NvmParams, 2>{NvmParams(1.0, 1.0, 1.0), NvmParams(-0.5, 2.0, 0.5)}) {
      const std::string tag = detail::format_number(p.mu) + "," + detail::format_number(p.sigma) + "," +
                              detail::format_number(p.lambda);
      add("asym-laplace", "nvm-" + tag,
          "sigma X sqrt(U) + mu U, U ~ Exp(lambda) ~ asymmetric Laplace, (mu, sigma, lambda) = (" + tag + ")",
          [p](const CheckContext& c) {
            const auto rates = nvm_to_rates(p);
            return ks_check(
                c, [p](RandomStream& s) { return sample_asym_laplace_nvm(p, s); },
                [rates](double x) { return asym_laplace_cdf(rates, x); }, 0.01);
          });
    }
    add("asym-laplace", "rate-identities",
        "a1 a2 = 2 lambda / sigma^2 and 1/a1 - 1/a2 = mu / lambda over a parameter grid; max relative residual",
        [](const CheckContext&) {
          double worst = 0.0;
          for (double mu : {-3.0, -0.5, 0.0, 0.25, 1.0, 4.0}) {
            for (double sigma : {0.3, 1.0, 2.0}) {
              for (double lambda : {0.1, 0.5, 1.0, 3.0}) {
                const NvmParams p(mu, sigma, lambda);
                const auto r = nvm_to_rates(p);
                const double prod = r.a1() * r.a2() / (2.0 * lambda / (sigma * sigma)) - 1.0;
                const double diff = (1.0 / r.a1() - 1.0 / r.a2()) - mu / lambda;
                const double scale = std::max(1.0, std::abs(mu / lambda));
                worst = std::max({worst, std::abs(prod), std::abs(diff) / scale});
              }
            }
          }
          return below(worst, 1e-12);
        });
    add("asym-laplace", "characteristic-function",
        "empirical CF at t = 1 vs lambda / (lambda - i mu t + sigma^2 t^2 / 2), (mu, sigma, lambda) = (1, 1, 1); z-score",
        [](const CheckContext& c) {
          const NvmParams p(1.0, 1.0, 1.0);
          const auto draws = draw_ensemble(
              c.opt.n, c.stream, [p](RandomStream& s) { return sample_asym_laplace_nvm(p, s); }, c.opt.workers);
          return below(estimate_cf(draws, 1.0).z_score(nvm_cf(p, 1.0)), 4.0);
        });

    // -- first kind
    const AsymWeibullILaw first(0.36603, 1.36603, 0.5);
    add("asym-weibull1", "mixture-vs-cdf", "(sigma X sqrt(W1) + mu W1) V_gamma ~ first-kind CDF, (a1, a2, gamma) = (0.36603, 1.36603, 0.5)",
        [first](const CheckContext& c) {
          return ks_check(
              c, [first](RandomStream& s) { return sample_asym_weibull1(first, s); },
              [first](double x) { return asym_weibull1_cdf(first, x); }, 0.01);
        });
    add("asym-weibull1", "mixture-vs-direct", "mixture route vs sign-branch route, two-sample",
        [first](const CheckContext& c) {
          return ks2_check(
              c, [first](RandomStream& s) { return sample_asym_weibull1(first, s); },
              [first](RandomStream& s) { return sample_asym_weibull1_direct(first, s); }, 0.012);
        });
    add("asym-weibull1", "symmetric-reduction", "a1 = a2 = 1 reduces to the two-sided law; max abs difference",
        [](const CheckContext&) {
          double worst = 0.0;
          for (double g : {0.3, 0.7, 1.0}) {
            const AsymWeibullILaw law(1.0, 1.0, g);
            for (int i = -40; i <= 40; ++i) {
              const double x = 0.1 * i;
              worst = std::max(worst, std::abs(asym_weibull1_cdf(law, x) - two_sided_cdf(TwoSidedWeibullLaw(g), x)));
            }
          }
          return below(worst, 1e-12);
        });

    // -- second kind
    add("asym-weibull2", "symmetric-reduction", "mu = 0: second-kind CDF = two-sided CDF, gamma = 0.5, x in {-1,0,1}",
        [](const CheckContext&) {
          const AsymWeibullIILaw law(0.0, 1.0, 0.5);
          double worst = 0.0;
          for (double x : {-1.0, 0.0, 1.0}) {
            worst = std::max(worst, std::abs(asym_weibull2_cdf(law, x) - two_sided_cdf(TwoSidedWeibullLaw(0.5), x)));
          }
          return below(worst, 1e-4);
        });
    add("asym-weibull2", "laplace-reduction",
        "gamma = 1, mu = sigma = 1: second-kind CDF = asymmetric Laplace with lambda = 1/2",
        [](const CheckContext&) {
          const AsymWeibullIILaw law(1.0, 1.0, 1.0);
          const AsymLaplaceLaw target(1.0 / (std::numbers::sqrt2 + 1.0), 1.0 / (std::numbers::sqrt2 - 1.0));
          double worst = 0.0;
          for (int i = -30; i <= 30; ++i) {
            const double x = 0.2 * i;
            worst = std::max(worst, std::abs(asym_weibull2_cdf(law, x) - asym_laplace_cdf(target, x)));
          }
          return below(worst, 1e-4);
        });
    add("asym-weibull2", "sampler-vs-quadrature", "mu Z + sigma sqrt(Z) X, Z ~ H_gamma vs quadrature CDF, (gamma, mu, sigma) = (0.5, 1, 1)",
        [](const CheckContext& c) {
          const AsymWeibullIILaw law(1.0, 1.0, 0.5);
          const auto table = tabulate_asym_weibull2(law);
          return ks_check(c, [&law](RandomStream& s) { return sample_asym_weibull2(law, s); }, table, 0.01);
        });
    add("asym-weibull2", "quantile-resample",
        "mixture draws vs quadrature-quantile resample, (gamma, mu, sigma) = (0.7, -0.5, 2), two-sample",
        [](const CheckContext& c) {
          const AsymWeibullIILaw law(-0.5, 2.0, 0.7);
          const auto table = tabulate_asym_weibull2(law);
          return ks2_check(
              c, [&law](RandomStream& s) { return sample_asym_weibull2(law, s); },
              [&table](RandomStream& s) { return table.quantile(s.uniform()); }, 0.012);
        });

    // -- random sums
    add("random-sum", "row-clt", "uniform-increment row sums, k_n = 400, (mu, sigma) = (0, 1) ~ N(0, 1)",
        [](const CheckContext& c) {
          RandomSumScheme scheme;
          scheme.k_n = 400;
          scheme.family = IncrementFamily::uniform;
          const auto sample = detail::draw(c, c.opt.randsum_ensemble, c.stream,
                                           [&scheme](RandomStream& s) { return simulate_row_sum(scheme, s); });
          return below(ks_one_sample(sample, std_normal_cdf).statistic, 0.02,
                       "two-point rows sit on a lattice of step 0.1 whose exact KS distance to N(0, 1) is 0.0199");
        });
    add("random-sum", "lindeberg", "Lindeberg fraction nonincreasing in k_n in {4,16,64,256}, eps = 0.1, all families; max increase",
        [](const CheckContext&) {
          double worst = 0.0;
          std::string note;
          for (auto f : {IncrementFamily::two_point, IncrementFamily::normal, IncrementFamily::uniform}) {
            std::vector<double> fr;
            for (std::uint64_t k : {4, 16, 64, 256}) {
              RandomSumScheme scheme;
              scheme.k_n = k;
              scheme.family = f;
              fr.push_back(lindeberg_fraction(scheme, 0.1));
            }
            worst = std::max(worst, detail::max_increase(fr));
            note += (note.empty() ? "" : "; ") + to_string(f) + ": " + detail::join_numbers(fr);
          }
          CheckOutcome out{worst, 0.0, worst <= 0.0, note};
          return out;
        });
    add("random-sum", "laplace-limit",
        "gamma = 1, (mu, sigma) = (1, 1), k_n = 400, two-point: random sums vs asymmetric Laplace (lambda = 1/2)",
        [](const CheckContext& c) {
          RandomSumScheme scheme;
          scheme.k_n = 400;
          scheme.mu = 1.0;
          const auto sample = detail::draw(c, c.opt.randsum_ensemble, c.stream,
                                           [&scheme](RandomStream& s) { return simulate_random_sum(scheme, s); });
          const AsymLaplaceLaw target(1.0 / (std::numbers::sqrt2 + 1.0), 1.0 / (std::numbers::sqrt2 - 1.0));
          return below(ks_one_sample(sample, [&target](double x) { return asym_laplace_cdf(target, x); }).statistic,
                       0.02);
        });
    add("random-sum", "index-law", "gamma = 1, k_n = 400: N_n / k_n vs H_1", [](const CheckContext& c) {
      RandomSumScheme scheme;
      scheme.k_n = 400;
      const auto sample = detail::draw(c, c.opt.randsum_ensemble, c.stream, [&scheme](RandomStream& s) {
        return static_cast<double>(draw_index(scheme, s)) / scheme.k();
      });
      return below(ks_one_sample(sample, [](double y) { return h_gamma_cdf(MixingLawH(1.0), y); }).statistic, 0.02);
    });
    for (double mu : {0.0, 1.0}) {
      add("random-sum", "transfer-mu-" + detail::format_number(mu),
          "gamma = 0.5, (mu, sigma) = (" + detail::format_number(mu) +
              ", 1), normal increments, k_n = 10^6: random sums vs second-kind mixture draws, two-sample",
          [mu](const CheckContext& c) {
            RandomSumScheme scheme;
            scheme.k_n = 1000000;
            scheme.family = IncrementFamily::normal;
            scheme.target_gamma = 0.5;
            scheme.mu = mu;
            const AsymWeibullIILaw law(mu, 1.0, 0.5);
            const auto a = detail::draw(c, c.opt.randsum_ensemble, c.stream.derive(0),
                                        [&scheme](RandomStream& s) { return simulate_random_sum(scheme, s); });
            const auto b = detail::draw(c, c.opt.randsum_ensemble, c.stream.derive(1), [&law, mu](RandomStream& s) {
              return mu == 0.0 ? sample_two_sided_via_normal_mixture(0.5, s) : sample_asym_weibull2(law, s);
            });
            return below(ks_two_sample(a, b).statistic, 0.02,
                         "k_n = 400 is bounded below by the index lattice near 0");
          });
    }
    add("random-sum", "necessity-proxy",
        "constant index N_n = k_n = 400, uniform increments, gamma = 0.5, (mu, sigma) = (1, 1): matches N(1, 1), not the second kind",
        [](const CheckContext& c) {
          RandomSumScheme scheme;
          scheme.k_n = 400;
          scheme.family = IncrementFamily::uniform;
          scheme.index_law = IndexLaw::constant;
          scheme.target_gamma = 0.5;
          scheme.mu = 1.0;
          const auto sums = detail::draw(c, c.opt.randsum_ensemble, c.stream.derive(0),
                                         [&scheme](RandomStream& s) { return simulate_random_sum(scheme, s); });
          const AsymWeibullIILaw law(1.0, 1.0, 0.5);
          const auto ref = detail::draw(c, c.opt.randsum_ensemble, c.stream.derive(1),
                                        [&law](RandomStream& s) { return sample_asym_weibull2(law, s); });
          const double to_normal = ks_one_sample(sums, [](double x) { return std_normal_cdf(x - 1.0); }).statistic;
          const double to_limit = ks_two_sample(sums, ref).statistic;
          CheckOutcome out = below(to_normal, 0.02, "KS vs second kind " + detail::format_number(to_limit));
          out.pass = out.pass && to_limit >= 0.02;
          return out;
        });
    add("random-sum", "k-sweep-trend",
        "gamma = 0.5, (mu, sigma) = (1, 1), normal increments: randsum_ks nonincreasing over k_n in {25,100,400} within 0.005",
        [](const CheckContext& c) {
          RandomSumScheme scheme;
          scheme.family = IncrementFamily::normal;
          scheme.target_gamma = 0.5;
          scheme.mu = 1.0;
          const std::array<std::uint64_t, 3> ks{25, 100, 400};
          StudyOptions so;
          so.workers = c.opt.workers;
          const auto reports = run_convergence_sweep(scheme, ks, c.opt.randsum_ensemble, c.stream, so);
          std::vector<double> trend;
          for (const auto& r : reports) trend.push_back(r.randsum_ks);
          return below(detail::max_increase(trend), 0.005, "randsum_ks " + detail::join_numbers(trend));
        });
    return v;
  }();
  return checks;
}

/// Group names in registry order, without repeats.
inline std::vector<std::string> verify_groups() {
  std::vector<std::string> groups;
  for (const auto& c : identity_checks()) {
    if (std::find(groups.begin(), groups.end(), c.group) == groups.end()) groups.push_back(c.group);
  }
  return groups;
}

/// Runs the selected checks. Backend failures become failed records.
inline std::vector<VerifyRecord> run_verify(const VerifyOptions& opt) {
  const auto groups = verify_groups();
  for (const auto& g : opt.only) {
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) {
      throw DomainError("unknown verify group '" + g + "'");
    }
  }
  std::vector<VerifyRecord> out;
  for (const auto& check : identity_checks()) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), check.group) == opt.only.end()) continue;
    VerifyRecord rec{check.group, check.name, check.identity, 0.0, 0.0, false, {}};
    const CheckContext ctx{opt, RandomStream(opt.seed, detail::fnv1a(check.group + "/" + check.name))};
    try {
      const auto r = check.run(ctx);
      rec.statistic = r.statistic;
      rec.threshold = r.threshold;
      rec.pass = r.pass;
      rec.note = r.note;
    } catch (const NumericFailure& e) {
      rec.statistic = std::numeric_limits<double>::quiet_NaN();
      rec.note = std::string("numeric failure: ") + e.what();
    } catch (const std::exception& e) {
      rec.statistic = std::numeric_limits<double>::quiet_NaN();
      rec.note = std::string("error: ") + e.what();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline bool all_pass(const std::vector<VerifyRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const VerifyRecord& r) { return r.pass; });
}

/// Records as a report. The worker count is deliberately left out of the
/// metadata: the report bytes do not depend on it.
inline Report verify_report(const std::vector<VerifyRecord>& records, const VerifyOptions& opt) {
  Report report;
  report.metadata = {{"tool", "weibullmix verify"},
                     {"version", kVersion},
                     {"seed", std::to_string(opt.seed)},
                     {"law", "identity suite"},
                     {"n", std::to_string(opt.n)},
                     {"moment_n", std::to_string(opt.moment_n)},
                     {"randsum_ensemble", std::to_string(opt.randsum_ensemble)}};
  report.columns = {"group", "name", "identity", "statistic", "threshold", "pass", "note"};
  for (const auto& r : records) {
    report.add_row({r.group, r.name, r.identity, r.statistic, r.threshold, std::string(r.pass ? "true" : "false"),
                    r.note});
  }
  return report;
}

}  // namespace wmix
