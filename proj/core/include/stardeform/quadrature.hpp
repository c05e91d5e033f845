#pragma once

#include <cmath>
#include <span>
#include <string>

#include "stardeform/scalar.hpp"

namespace sd::quad {

// 30-point Gauss-Legendre rule on [-1, 1].
std::span<const double> gl_nodes();
std::span<const double> gl_weights();

// One Gauss-Legendre panel on [a, b].
template <class F>
Complex gl_panel(F&& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (b + a);
  auto x = gl_nodes();
  auto wt = gl_weights();
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += wt[i] * Complex(f(m + h * x[i]));
  return s * h;
}

// Composite rule with equal panels; callers pick the panel count from an
// explicit resolution argument.
template <class F>
Complex gl_composite(F&& f, double a, double b, int panels) {
  Complex s = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) s += gl_panel(f, a + p * h, a + (p + 1) * h);
  return s;
}

namespace detail {
template <class F>
Complex adapt(F& f, double a, double b, Complex whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  Complex left = gl_panel(f, a, m);
  Complex right = gl_panel(f, m, b);
  Complex both = left + right;
  if (std::abs(both - whole) <= tol) return both;
  if (depth <= 0) {
    throw QuadratureFailure("adaptive quadrature did not converge on [" + std::to_string(a) +
                            ", " + std::to_string(b) + "]");
  }
  return adapt(f, a, m, left, 0.5 * tol, depth - 1) + adapt(f, m, b, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Bisection-adaptive Gauss-Legendre; throws QuadratureFailure when the
// requested absolute tolerance is out of reach.
template <class F>
Complex gl_adaptive(F&& f, double a, double b, double tol, int max_depth = 40) {
  if (a == b) return 0.0;
  Complex whole = gl_panel(f, a, b);
  return detail::adapt(f, a, b, whole, tol, max_depth);
}

// Integral of f(z) dz along the segment z0 -> z1.
template <class F>
Complex segment_integral(F&& f, Complex z0, Complex z1, int panels) {
  const Complex dz = z1 - z0;
  auto g = [&](double s) { return f(z0 + s * dz) * dz; };
  return gl_composite(g, 0.0, 1.0, panels);
}

}  // namespace sd::quad
