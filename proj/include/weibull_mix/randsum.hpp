#pragma once

// Triangular-array random sums S_{n,N_n} = X_{n,1} + ... + X_{n,N_n} with the
// row mean mu/k_n and row variance sigma^2/k_n, and a random index
// N_n = max(1, round(k_n Z)), Z ~ H_gamma, independent of the summands. As
// k_n grows the row sums approach N(mu, sigma^2) and the random sums approach
// the second-kind asymmetric Weibull law with parameters (mu, sigma, gamma).

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymmetric.hpp"
#include "errors.hpp"
#include "ks.hpp"
#include "mixtures.hpp"
#include "montecarlo.hpp"
#include "rng.hpp"
#include "special.hpp"

namespace wmix {

enum class IncrementFamily {
  two_point,  // mu/k + sigma/sqrt(k) * (+-1)
  normal,     // N(mu/k, sigma^2/k)
  uniform,    // mu/k + U(-a, a), a = sqrt(3/k) sigma
  constant,   // mu/k, no randomness
};

enum class IndexLaw {
  mixing,    // max(1, round(k_n Z)), Z ~ H_gamma
  constant,  // k_n
};

inline std::string to_string(IncrementFamily f) {
  switch (f) {
    case IncrementFamily::two_point: return "two-point";
    case IncrementFamily::normal: return "normal";
    case IncrementFamily::uniform: return "uniform";
    case IncrementFamily::constant: return "constant";
  }
  return "?";
}

inline IncrementFamily increment_family_from_string(const std::string& s) {
  if (s == "two-point") return IncrementFamily::two_point;
  if (s == "normal") return IncrementFamily::normal;
  if (s == "uniform") return IncrementFamily::uniform;
  if (s == "constant") return IncrementFamily::constant;
  throw DomainError("unknown increment family '" + s + "' (two-point, normal, uniform, constant)");
}

struct RandomSumScheme {
  std::uint64_t k_n = 400;
  IncrementFamily family = IncrementFamily::two_point;
  IndexLaw index_law = IndexLaw::mixing;
  double target_gamma = 1.0;
  double mu = 0.0;
  double sigma = 1.0;

  void validate() const {
    detail::require(k_n >= 1, "random-sum scheme requires k_n >= 1");
    detail::require(sigma > 0.0, "random-sum scheme requires sigma > 0");
    detail::require(std::isfinite(mu), "random-sum scheme requires finite mu");
    detail::require(target_gamma > 0.0 && target_gamma <= 1.0,
                    "random-sum scheme requires 0 < target_gamma <= 1");
  }

  double k() const { return static_cast<double>(k_n); }
  AsymWeibullIILaw limit_law() const { return {mu, sigma, target_gamma}; }
};

/// Sum of `count` independent increments of the scheme's row.
inline double row_sum(const RandomSumScheme& scheme, std::uint64_t count, RandomStream& rng) {
  const double k = scheme.k();
  const double n = static_cast<double>(count);
  const double shift = n * scheme.mu / k;
  switch (scheme.family) {
    case IncrementFamily::constant:
      return shift;
    case IncrementFamily::normal:
      // A sum of iid normals is normal; one variate gives the same law.
      return shift + scheme.sigma * std::sqrt(n / k) * rng.normal();
    case IncrementFamily::two_point: {
      // Each bit of a generator word is one +-1 increment.
      std::uint64_t ones = 0;
      std::uint64_t left = count;
      for (; left >= 64; left -= 64) ones += static_cast<std::uint64_t>(std::popcount(rng()));
      if (left > 0) ones += static_cast<std::uint64_t>(std::popcount(rng() >> (64 - left)));
      const double signed_count = 2.0 * static_cast<double>(ones) - n;
      return shift + scheme.sigma / std::sqrt(k) * signed_count;
    }
    case IncrementFamily::uniform: {
      const double a = std::sqrt(3.0 / k) * scheme.sigma;
      double acc = 0.0;
      for (std::uint64_t i = 0; i < count; ++i) acc += a * (2.0 * rng.uniform() - 1.0);
      return shift + acc;
    }
  }
  return shift;
}

/// S_{n,k_n}.
inline double simulate_row_sum(const RandomSumScheme& scheme, RandomStream& rng) {
  return row_sum(scheme, scheme.k_n, rng);
}

/// N_n for one replicate.
inline std::uint64_t draw_index(const RandomSumScheme& scheme, RandomStream& rng) {
  if (scheme.index_law == IndexLaw::constant) return scheme.k_n;
  const double z = sample_h_gamma(MixingLawH(scheme.target_gamma), rng);
  const double scaled = std::round(scheme.k() * z);
  return scaled < 1.0 ? 1 : static_cast<std::uint64_t>(scaled);
}

/// S_{n,N_n}: draws the index first, then N_n increments.
inline double simulate_random_sum(const RandomSumScheme& scheme, RandomStream& rng) {
  const std::uint64_t n = draw_index(scheme, rng);
  return row_sum(scheme, n, rng);
}

/// k_n E[(X*)^2 1(|X*| >= eps)] for the centred increment X* = X - mu/k_n.
inline double lindeberg_fraction(const RandomSumScheme& scheme, double epsilon) {
  detail::require(epsilon > 0.0, "lindeberg_fraction requires epsilon > 0");
  const double k = scheme.k();
  const double s2 = scheme.sigma * scheme.sigma;
  switch (scheme.family) {
    case IncrementFamily::constant:
      return 0.0;
    case IncrementFamily::two_point:
      return scheme.sigma / std::sqrt(k) >= epsilon ? s2 : 0.0;
    case IncrementFamily::normal: {
      const double sd = scheme.sigma / std::sqrt(k);
      const double c = epsilon / sd;
      // E[X^2; |X| >= eps] for X ~ N(0, sd^2).
      return k * sd * sd * (std::erfc(c / std::numbers::sqrt2) + 2.0 * c * std_normal_pdf(c));
    }
    case IncrementFamily::uniform: {
      const double a = std::sqrt(3.0 / k) * scheme.sigma;
      if (epsilon >= a) return 0.0;
      return k * (a * a * a - epsilon * epsilon * epsilon) / (3.0 * a);
    }
  }
  return 0.0;
}

struct ConvergenceReport {
  std::uint64_t k_n = 0;
  std::size_t ensemble = 0;
  double row_ks = 0.0;       // row sums vs N(mu, sigma^2)
  double index_ks = 0.0;     // N_n / k_n vs H_gamma
  double randsum_ks = 0.0;   // random sums vs limit-law draws (two-sample)
  double lindeberg_fraction = 0.0;
  /// gamma = 1 only: random sums vs the closed-form asymmetric Laplace limit.
  std::optional<double> closed_form_ks;
};

struct StudyOptions {
  unsigned workers = 1;
  double lindeberg_epsilon = 0.1;
  std::size_t h_table_nodes = 300;
};

/// H_gamma tabulated on a log grid covering 1e-9 <= H <= 1 - 1e-9,
/// interpolated in log y.
inline TabulatedCdf tabulate_h_gamma(const MixingLawH& law, std::size_t nodes = 300) {
  detail::require(nodes >= 2, "tabulate_h_gamma requires >= 2 nodes");
  const QuadratureOptions opt{1e-14, 1e-7, 4000};
  double lo = -1.0;
  while (h_gamma_cdf(law, std::exp(lo), opt) > 1e-9 && lo > -300.0) lo -= 4.0;
  double hi = 1.0;
  while (h_gamma_survival(law, std::exp(hi), opt) > 1e-9 && hi < 300.0) hi += 1.0;
  std::vector<double> y(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    y[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(nodes - 1));
  }
  return TabulatedCdf::from_log(std::move(y), [&](double v) { return h_gamma_cdf(law, v, opt); });
}

namespace detail {

/// What a study compares against; shared across a k_n sweep.
struct ConvergenceTargets {
  std::optional<TabulatedCdf> h_table;
  EmpiricalSample reference;

  ConvergenceTargets(const RandomSumScheme& scheme, std::size_t ensemble, const RandomStream& rng,
                     const StudyOptions& opt) {
    const MixingLawH h(scheme.target_gamma);
    if (!h.stable().degenerate()) h_table.emplace(tabulate_h_gamma(h, opt.h_table_nodes));
    const auto law = scheme.limit_law();
    reference = EmpiricalSample(draw_ensemble(
        ensemble, rng.derive(3), [&law](RandomStream& s) { return sample_asym_weibull2(law, s); },
        opt.workers));
  }

  double h_cdf(double gamma, double y) const {
    if (h_table) return (*h_table)(y);
    return h_gamma_cdf(MixingLawH(gamma), y);
  }
};

inline ConvergenceReport run_study(const RandomSumScheme& scheme, std::size_t ensemble,
                                   const RandomStream& rng, const StudyOptions& opt,
                                   const ConvergenceTargets& targets) {
  scheme.validate();
  detail::require(ensemble >= 1000, "convergence study requires ensemble_size >= 1000");
  ConvergenceReport report;
  report.k_n = scheme.k_n;
  report.ensemble = ensemble;

  const auto rows = EmpiricalSample(draw_ensemble(
      ensemble, rng.derive(0), [&](RandomStream& s) { return simulate_row_sum(scheme, s); },
      opt.workers));
  report.row_ks = ks_one_sample(rows, [&](double x) {
                    return std_normal_cdf((x - scheme.mu) / scheme.sigma);
                  }).statistic;

  // Same substreams for both passes, so the indices are those of the sums.
  const RandomStream sums_stream = rng.derive(1);
  const auto ratios = EmpiricalSample(draw_ensemble(
      ensemble, sums_stream,
      [&](RandomStream& s) { return static_cast<double>(draw_index(scheme, s)) / scheme.k(); },
      opt.workers));
  report.index_ks =
      ks_one_sample(ratios, [&](double y) { return targets.h_cdf(scheme.target_gamma, y); }).statistic;

  const auto sums = EmpiricalSample(draw_ensemble(
      ensemble, sums_stream, [&](RandomStream& s) { return simulate_random_sum(scheme, s); },
      opt.workers));
  report.randsum_ks = ks_two_sample(sums, targets.reference).statistic;
  report.lindeberg_fraction = lindeberg_fraction(scheme, opt.lindeberg_epsilon);

  if (scheme.target_gamma == 1.0) {
    // H_1 is Exp(1/2), so the limit is the asymmetric Laplace law at lambda = 1/2.
    const auto rates = nvm_to_rates(NvmParams(scheme.mu, scheme.sigma, 0.5));
    report.closed_form_ks =
        ks_one_sample(sums, [&](double x) { return asym_laplace_cdf(rates, x); }).statistic;
  }
  return report;
}

}  // namespace detail

/// Row-sum CLT, index convergence and random-sum convergence for one scheme.
/// Deterministic for a fixed stream and independent of opt.workers.
inline ConvergenceReport run_convergence_study(const RandomSumScheme& scheme, std::size_t ensemble_size,
                                               const RandomStream& rng, const StudyOptions& opt = {}) {
  scheme.validate();
  const detail::ConvergenceTargets targets(scheme, ensemble_size, rng, opt);
  return detail::run_study(scheme, ensemble_size, rng, opt, targets);
}

/// run_convergence_study for each k_n, against one shared reference sample.
inline std::vector<ConvergenceReport> run_convergence_sweep(const RandomSumScheme& scheme,
                                                            std::span<const std::uint64_t> k_values,
                                                            std::size_t ensemble_size,
                                                            const RandomStream& rng,
                                                            const StudyOptions& opt = {}) {
  scheme.validate();
  detail::require(!k_values.empty(), "run_convergence_sweep requires at least one k_n");
  const detail::ConvergenceTargets targets(scheme, ensemble_size, rng, opt);
  std::vector<ConvergenceReport> out;
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    RandomSumScheme row = scheme;
    row.k_n = k_values[i];
    out.push_back(detail::run_study(row, ensemble_size, rng.derive(100 + i), opt, targets));
  }
  return out;
}

}  // namespace wmix
