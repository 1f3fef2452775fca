#pragma once

#include <cmath>
#include <numbers>

namespace pettylab {

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance `tol`.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
  if (b == a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Double-exponential (tanh-sinh) quadrature on [a, b]. Endpoint singularities such as
/// sqrt(s - a) cost nothing extra. The step is halved until two levels agree to `tol`.
template <class F>
double tanh_sinh(const F& f, double a, double b, double tol, int max_level = 8) {
  if (b == a) return 0.0;
  const double r = 0.5 * (b - a);
  constexpr double tmax = 3.2;
  auto node = [&](double t) {
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double cu = std::cosh(u);
    const double x = std::tanh(u);
    const double wt = 0.5 * std::numbers::pi * std::cosh(t) / (cu * cu);
    // Distance to the nearer endpoint, computed without cancellation.
    const double gap = r / (std::exp(std::abs(u)) * cu);
    const double y = x >= 0.0 ? b - gap : a + gap;
    return wt * f(y);
  };
  double h = 0.5;
  double sum = node(0.0);
  for (double t = h; t <= tmax; t += h) sum += node(t) + node(-t);
  double prev = r * h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= tmax; t += 2.0 * h) sum += node(t) + node(-t);
    const double cur = r * h * sum;
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace pettylab
