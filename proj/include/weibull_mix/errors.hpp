#pragma once

#include <stdexcept>
#include <string>

namespace wmix {

/// Parameter outside the domain of a law or operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation undefined for a degenerate (point-mass) law.
class DegenerateLawError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical backend (quadrature, root finding) failed to reach its tolerance.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, double residual, double fallback = 0.0)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual),
        fallback_(fallback) {}

  double residual() const noexcept { return residual_; }
  /// Best available estimate, e.g. a Monte Carlo value when quadrature failed.
  double fallback() const noexcept { return fallback_; }

 private:
  double residual_;
  double fallback_;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace wmix
