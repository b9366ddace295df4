#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace wmix {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  /// Panel budget for the global subdivision.
  std::size_t max_panels = 4000;
};

namespace detail {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const noexcept { return error < o.error; }
};

/// One Gauss-Kronrod (G10/K21) panel. The error is |K21 - G10| scaled to [a, b].
template <class F>
Panel gk_panel(const F& f, double a, double b) {
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err * 0.5 * (b - a)};
}

/// Global adaptive subdivision: always bisect the panel with the largest error.
template <class F>
QuadratureResult gk_adaptive(const F& f, double a, double b, const QuadratureOptions& opt) {
  std::priority_queue<Panel> panels;
  panels.push(gk_panel(f, a, b));
  double value = panels.top().value;
  double error = panels.top().error;
  std::size_t count = 1;
  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) && count < opt.max_panels &&
         std::isfinite(value)) {
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;  // panel at machine resolution
    panels.pop();
    const Panel left = gk_panel(f, worst.a, mid);
    const Panel right = gk_panel(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  for (; !panels.empty(); panels.pop()) {
    value += panels.top().value;
    error += panels.top().error;
  }
  return {value, error};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G10/K21) quadrature over [a, b].
///
/// b may be +infinity, in which case the integral is mapped onto [0, 1) by
/// x = a + t / (1 - t). Throws NumericFailure when the error estimate exceeds
/// max(abs_tol, rel_tol * |value|) after the panel budget is spent.
template <class F>
QuadratureResult adaptive_quadrature(const F& f, double a, double b,
                                     const QuadratureOptions& opt = {}) {
  if (!(a <= b)) throw DomainError("adaptive_quadrature: need a <= b");
  if (a == b) return {};
  QuadratureResult r;
  if (std::isinf(b)) {
    if (std::isinf(a)) throw DomainError("adaptive_quadrature: lower limit must be finite");
    auto mapped = [&](double t) {
      const double s = 1.0 - t;
      const double v = f(a + t / s);
      return v == 0.0 ? 0.0 : v / (s * s);
    };
    r = detail::gk_adaptive(mapped, 0.0, 1.0, opt);
  } else {
    r = detail::gk_adaptive(f, a, b, opt);
  }
  if (!std::isfinite(r.value) || r.error > std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value))) {
    throw NumericFailure("adaptive_quadrature: no convergence on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]",
                         r.error);
  }
  return r;
}

/// Sum of adaptive_quadrature over consecutive panels [p0,p1], [p1,p2], ...
/// Panel edges should sit at kinks or peaks of the integrand.
template <class F>
QuadratureResult adaptive_quadrature_panels(const F& f, std::span<const double> edges,
                                            const QuadratureOptions& opt = {}) {
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i] == edges[i + 1]) continue;
    const auto piece = adaptive_quadrature(f, edges[i], edges[i + 1], opt);
    total.value += piece.value;
    total.error += piece.error;
  }
  return total;
}

}  // namespace wmix
