#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace wmix {

/// Sorted finite sample.
class EmpiricalSample {
 public:
  EmpiricalSample() = default;
  explicit EmpiricalSample(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("EmpiricalSample: non-finite value");
    }
    std::sort(values_.begin(), values_.end());
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Fraction of values strictly below x.
  double cdf(double x) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
  }

 private:
  std::vector<double> values_;
};

struct KsReport {
  double statistic = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;  // 0 for a one-sample test
  double threshold = 0.0;
  bool pass = false;
};

inline constexpr double kKsSafetyFactor = 1.5;

/// 1.5 x the asymptotic 5% critical value 1.36 / sqrt(n).
inline double ks_one_sample_threshold(std::size_t n) {
  return kKsSafetyFactor * 1.36 / std::sqrt(static_cast<double>(n));
}

inline double ks_two_sample_threshold(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return kKsSafetyFactor * 1.36 * std::sqrt((nn + mm) / (nn * mm));
}

/// sup_x |F_n(x) - F(x)| for continuous F.
template <class Cdf>
KsReport ks_one_sample(const EmpiricalSample& sample, const Cdf& cdf,
                       std::optional<double> threshold = std::nullopt) {
  if (sample.empty()) throw DomainError("ks_one_sample: empty sample");
  const auto n = sample.size();
  const double nd = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / nd - f, f - static_cast<double>(i) / nd});
  }
  KsReport r{d, n, 0, threshold.value_or(ks_one_sample_threshold(n)), false};
  r.pass = r.statistic < r.threshold;
  return r;
}

inline KsReport ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b,
                              std::optional<double> threshold = std::nullopt) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsReport r{d, a.size(), b.size(), threshold.value_or(ks_two_sample_threshold(a.size(), b.size())),
             false};
  r.pass = r.statistic < r.threshold;
  return r;
}

}  // namespace wmix
