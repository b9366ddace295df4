#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"

namespace wmix {

/// Replicate i of an ensemble always draws from stream.substream(i), so the
/// result does not depend on how replicates are spread over workers.
template <class Sampler>
std::vector<double> draw_ensemble(std::size_t n, const RandomStream& stream, Sampler&& sampler,
                                  unsigned workers = 1) {
  std::vector<double> out(n);
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream s = stream.substream(i);
      out[i] = sampler(s);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    fill(0, n);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&fill, begin, end] { fill(begin, end); });
    }
  }
  return out;
}

/// Worker count from the hardware, at least 1.
inline unsigned default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;

  /// |mean - target| in units of the standard error.
  double z_score(double target) const {
    return std_error > 0.0 ? std::abs(mean - target) / std_error
                           : (mean == target ? 0.0 : INFINITY);
  }
};

/// Sample mean with its standard error (Welford accumulation).
inline MeanEstimate estimate_mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("estimate_mean: empty sample");
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double v : values) {
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(k);
  const double var = k > 1 ? m2 / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n), k};
}

template <class F>
MeanEstimate estimate_mean_of(std::span<const double> values, F&& f) {
  std::vector<double> mapped(values.size());
  std::transform(values.begin(), values.end(), mapped.begin(), f);
  return estimate_mean(mapped);
}

/// P(sample < x) estimated from n draws of `sampler` on substreams of `stream`.
template <class Sampler>
MeanEstimate monte_carlo_cdf(Sampler&& sampler, double x, std::size_t n, const RandomStream& stream,
                             unsigned workers = 1) {
  const auto draws = draw_ensemble(n, stream, sampler, workers);
  return estimate_mean_of(draws, [x](double v) { return v < x ? 1.0 : 0.0; });
}

/// Empirical characteristic function at t with per-component standard errors.
struct CfEstimate {
  MeanEstimate real;
  MeanEstimate imag;

  /// Largest per-component deviation from `target`, in standard errors.
  double z_score(std::complex<double> target) const {
    return std::max(real.z_score(target.real()), imag.z_score(target.imag()));
  }
};

inline CfEstimate estimate_cf(std::span<const double> values, double t) {
  return {estimate_mean_of(values, [t](double x) { return std::cos(t * x); }),
          estimate_mean_of(values, [t](double x) { return std::sin(t * x); })};
}

/// Distribution function known at increasing nodes, linearly interpolated
/// in x, or in log x for tables built with from_log. Below the first node it
/// returns the first value; above the last, the last.
class TabulatedCdf {
 public:
  TabulatedCdf(std::vector<double> x, std::vector<double> p, bool log_axis = false)
      : x_(std::move(x)), p_(std::move(p)), log_axis_(log_axis) {
    if (x_.size() < 2 || x_.size() != p_.size()) throw DomainError("TabulatedCdf: need >= 2 nodes");
    for (std::size_t i = 1; i < x_.size(); ++i) {
      if (!(x_[i] > x_[i - 1])) throw DomainError("TabulatedCdf: nodes must increase");
      if (p_[i] < p_[i - 1]) throw DomainError("TabulatedCdf: values must not decrease");
    }
    if (log_axis_ && !(x_.front() > 0.0)) throw DomainError("TabulatedCdf: log axis needs positive nodes");
    t_.resize(x_.size());
    std::transform(x_.begin(), x_.end(), t_.begin(), [this](double v) { return axis(v); });
  }

  /// Tabulate `cdf` at the given nodes.
  template <class Cdf>
  static TabulatedCdf from(std::vector<double> nodes, const Cdf& cdf) {
    auto p = evaluate(nodes, cdf);
    return TabulatedCdf(std::move(nodes), std::move(p));
  }

  /// Tabulate `cdf` at positive nodes, interpolating in log x.
  template <class Cdf>
  static TabulatedCdf from_log(std::vector<double> nodes, const Cdf& cdf) {
    auto p = evaluate(nodes, cdf);
    return TabulatedCdf(std::move(nodes), std::move(p), true);
  }

  double operator()(double x) const {
    if (x <= x_.front()) return p_.front();
    if (x >= x_.back()) return p_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    const std::size_t lo = hi - 1;
    const double w = (axis(x) - t_[lo]) / (t_[hi] - t_[lo]);
    return p_[lo] + w * (p_[hi] - p_[lo]);
  }

  /// Inverse by interpolation; clamps to the tabulated range.
  double quantile(double prob) const {
    if (prob <= p_.front()) return x_.front();
    if (prob >= p_.back()) return x_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(p_.begin(), p_.end(), prob) - p_.begin());
    const std::size_t lo = hi - 1;
    const double dp = p_[hi] - p_[lo];
    const double w = dp > 0.0 ? (prob - p_[lo]) / dp : 0.0;
    const double t = t_[lo] + w * (t_[hi] - t_[lo]);
    return log_axis_ ? std::exp(t) : t;
  }

  std::span<const double> nodes() const noexcept { return x_; }
  std::span<const double> values() const noexcept { return p_; }
  bool log_axis() const noexcept { return log_axis_; }

 private:
  template <class Cdf>
  static std::vector<double> evaluate(const std::vector<double>& nodes, const Cdf& cdf) {
    std::vector<double> p(nodes.size());
    std::transform(nodes.begin(), nodes.end(), p.begin(), cdf);
    // Quadrature noise can break monotonicity in the last digits.
    for (std::size_t i = 1; i < p.size(); ++i) p[i] = std::max(p[i], p[i - 1]);
    return p;
  }

  double axis(double x) const { return log_axis_ ? std::log(x) : x; }

  std::vector<double> x_;
  std::vector<double> t_;
  std::vector<double> p_;
  bool log_axis_ = false;
};

}  // namespace wmix
