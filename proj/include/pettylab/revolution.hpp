#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pettylab/error.hpp"
#include "pettylab/quadrature.hpp"

namespace pettylab {

/// Volume of the k-dimensional unit ball, pi^{k/2} / Gamma(k/2 + 1).
inline double ball_volume(int k) {
  if (k < 1) throw InputError("ball_volume: dimension must be >= 1, got " + std::to_string(k));
  return std::exp(0.5 * k * std::log(std::numbers::pi) - std::lgamma(0.5 * k + 1.0));
}

inline double log_ball_volume(int k) {
  if (k < 1) throw InputError("log_ball_volume: dimension must be >= 1");
  return 0.5 * k * std::log(std::numbers::pi) - std::lgamma(0.5 * k + 1.0);
}

/// Table omega_1..omega_d.
struct BallVolumes {
  std::vector<double> omega;  // omega[k-1] = omega_k

  explicit BallVolumes(int d) {
    if (d < 1) throw InputError("BallVolumes: dimension must be >= 1");
    for (int k = 1; k <= d; ++k) omega.push_back(ball_volume(k));
  }
  double operator()(int k) const { return omega.at(static_cast<std::size_t>(k - 1)); }
};

struct ProfileNode {
  double s = 0.0;
  double f = 0.0;
};

/// Centrally symmetric body of revolution in R^d about the last coordinate axis:
/// the (d-1)-ball of radius f(s) sits at height s in [-a, a]. f is an even, concave,
/// nonnegative piecewise-linear function given by its nodes.
struct RevolutionBody {
  int d = 3;
  double a = 1.0;
  std::vector<ProfileNode> profile;
};

namespace detail {

inline double spacing_tol(const RevolutionBody& r) { return 1e-12 * std::max(1.0, r.a); }

}  // namespace detail

/// Checks node ordering, evenness, concavity (node test), and nonnegativity.
inline void validate(const RevolutionBody& r) {
  if (r.d < 3) throw InputError("revolution body: dimension must be >= 3");
  if (!(r.a > 0.0) || !std::isfinite(r.a)) throw InputError("revolution body: half-length must be positive");
  const auto& p = r.profile;
  if (p.size() < 2) throw InputError("revolution body: profile needs at least two nodes");
  const double stol = detail::spacing_tol(r);
  if (std::abs(p.front().s + r.a) > stol || std::abs(p.back().s - r.a) > stol)
    throw InputError("revolution body: profile must span [-a, a]");
  double fmax = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i].s) || !std::isfinite(p[i].f)) throw InputError("revolution body: non-finite node");
    if (p[i].f < 0.0) throw InputError("revolution body: profile must be nonnegative");
    if (i > 0 && !(p[i].s > p[i - 1].s)) throw InputError("revolution body: nodes must be strictly increasing");
    fmax = std::max(fmax, p[i].f);
  }
  if (fmax == 0.0) throw InputError("revolution body: profile is identically zero");
  const double ftol_even = 1e-12 * fmax;
  for (std::size_t i = 0, j = p.size() - 1; i <= j; ++i, --j) {
    if (std::abs(p[i].s + p[j].s) > stol || std::abs(p[i].f - p[j].f) > ftol_even)
      throw InputError("revolution body: profile is not even");
    if (j == 0) break;
  }
  const double ftol_concave = 1e-9 * fmax;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const double t = (p[i].s - p[i - 1].s) / (p[i + 1].s - p[i - 1].s);
    const double chord = (1.0 - t) * p[i - 1].f + t * p[i + 1].f;
    if (p[i].f < chord - ftol_concave) throw InputError("revolution body: profile is not concave");
  }
}

/// ∫_{-a}^{a} f^p ds for integer p >= 0, exact per linear piece:
/// ∫_0^L (f0 + (f1 - f0) t / L)^p dt = L (sum_{k=0}^p f0^k f1^{p-k}) / (p + 1).
inline double profile_power_integral(const std::vector<ProfileNode>& prof, int p) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
    const double f0 = prof[i].f, f1 = prof[i + 1].f, len = prof[i + 1].s - prof[i].s;
    double sum = 0.0, a = 1.0;
    for (int k = 0; k <= p; ++k) {
      sum += a * std::pow(f1, p - k);
      a *= f0;
    }
    total += len * sum / (p + 1);
  }
  return total;
}

/// ∫ f^p for real p > 0 by adaptive Simpson per piece (closed form when p is an integer).
inline double profile_power_integral(const std::vector<ProfileNode>& prof, double p, double tol = 1e-10) {
  if (p == std::round(p) && p >= 0.0 && p < 64.0) return profile_power_integral(prof, static_cast<int>(p));
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
    const double s0 = prof[i].s, s1 = prof[i + 1].s, f0 = prof[i].f, f1 = prof[i + 1].f;
    auto f = [&](double s) {
      const double v = f0 + (f1 - f0) * (s - s0) / (s1 - s0);
      return std::pow(std::max(v, 0.0), p);
    };
    total += adaptive_simpson(f, s0, s1, tol / static_cast<double>(prof.size()));
  }
  return total;
}

/// V = omega_{d-1} ∫ f^{d-1} ds.
inline double rev_volume(const RevolutionBody& r) {
  validate(r);
  return ball_volume(r.d - 1) * profile_power_integral(r.profile, r.d - 1);
}

/// h_{Π²K}(axis) = omega_{d-2}^{d-1} omega_{d-1}^{3-d} (∫ (omega_{d-1} f^{d-1})^{(d-2)/(d-1)} ds)^{d-1}.
/// The inner power collapses to omega_{d-1}^{(d-2)/(d-1)} f^{d-2}, so the integral is closed form.
inline double rev_second_proj_axis(const RevolutionBody& r) {
  validate(r);
  const int d = r.d;
  const double inner = profile_power_integral(r.profile, d - 2);
  const double log_val = (d - 1) * log_ball_volume(d - 2) + log_ball_volume(d - 1) + (d - 1) * std::log(inner);
  return std::exp(log_val);
}

/// h_{Π²K}(axis) / (h_K(axis) V(K)^{d-2}).
inline double axis_ratio(const RevolutionBody& r) {
  validate(r);
  const int d = r.d;
  const double i2 = profile_power_integral(r.profile, d - 2);
  const double i1 = profile_power_integral(r.profile, d - 1);
  // omega_{d-2}^{d-1} omega_{d-1} I_{d-2}^{d-1} / (a omega_{d-1}^{d-2} I_{d-1}^{d-2})
  const double log_val = (d - 1) * log_ball_volume(d - 2) + (3 - d) * log_ball_volume(d - 1) +
                         (d - 1) * std::log(i2) - (d - 2) * std::log(i1) - std::log(r.a);
  return std::exp(log_val);
}

inline double log_cone_bound(int d) {
  if (d < 3) throw InputError("cone_bound: dimension must be >= 3, got " + std::to_string(d));
  return std::log(2.0) + (d - 2) * std::log(static_cast<double>(d)) - (d - 1) * std::log(d - 1.0) +
         (d - 1) * log_ball_volume(d - 2) + (3 - d) * log_ball_volume(d - 1);
}

/// 2 d^{d-2} / (d-1)^{d-1} omega_{d-2}^{d-1} omega_{d-1}^{3-d}; the axis ratio of a double cone.
inline double cone_bound(int d) { return std::exp(log_cone_bound(d)); }

/// P(B_2^d) = omega_{d-1}^d omega_d^{2-d}, in log form.
inline double log_ball_petty_value(int d) {
  if (d < 2) throw InputError("ball Petty value: dimension must be >= 2");
  return d * log_ball_volume(d - 1) + (2 - d) * log_ball_volume(d);
}

/// c_d with cone_bound(d) = 2 c_d / sqrt(d) P(B_2^d).
inline double cone_bound_constant(int d) {
  return std::exp(log_cone_bound(d) + 0.5 * std::log(static_cast<double>(d)) - std::log(2.0) -
                  log_ball_petty_value(d));
}

struct BerwaldResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool equality = false;       ///< profile is the cone profile f(0)(1 - |s|/a)
  double cone_residual = 0.0;  ///< max |f - f(0)(1 - |s|/a)| / f(0)
};

inline double cone_profile_residual(const std::vector<ProfileNode>& prof, double a) {
  double f0 = 0.0;
  for (const auto& n : prof)
    if (std::abs(n.s) <= 1e-12 * a) f0 = n.f;
  if (f0 == 0.0) {
    // No node at 0: interpolate.
    for (std::size_t i = 0; i + 1 < prof.size(); ++i)
      if (prof[i].s < 0.0 && prof[i + 1].s > 0.0) {
        const double t = -prof[i].s / (prof[i + 1].s - prof[i].s);
        f0 = (1 - t) * prof[i].f + t * prof[i + 1].f;
      }
  }
  if (f0 == 0.0) return std::numeric_limits<double>::infinity();
  double res = 0.0;
  for (const auto& n : prof) res = std::max(res, std::abs(n.f - f0 * (1.0 - std::abs(n.s) / a)));
  return res / f0;
}

/// Berwald's inequality for an even concave f on [-a, a] and 0 < p < q:
/// ((1+p)/(2a) ∫ f^p)^{1/p} >= ((1+q)/(2a) ∫ f^q)^{1/q}.
inline BerwaldResult berwald_check(const std::vector<ProfileNode>& f, double a, double p, double q) {
  if (!(p > 0.0) || !(q > p)) throw InputError("berwald_check: need 0 < p < q");
  validate(RevolutionBody{3, a, f});
  BerwaldResult r;
  r.lhs = std::pow((1.0 + p) / (2.0 * a) * profile_power_integral(f, p), 1.0 / p);
  r.rhs = std::pow((1.0 + q) / (2.0 * a) * profile_power_integral(f, q), 1.0 / q);
  r.cone_residual = cone_profile_residual(f, a);
  r.equality = r.cone_residual < 1e-10;
  return r;
}

/// Double cone f(s) = r0 (1 - |s| / a), nodes at -a, 0, a.
inline RevolutionBody double_cone(int d, double a = 1.0, double r0 = 1.0) {
  return {d, a, {{-a, 0.0}, {0.0, r0}, {a, 0.0}}};
}

/// Cylinder f ≡ r0.
inline RevolutionBody cylinder(int d, double a = 1.0, double r0 = 1.0) { return {d, a, {{-a, r0}, {a, r0}}}; }

/// Profile sampled from callable f at n+1 equally spaced nodes on [-a, a] (n even keeps 0 a node).
template <class F>
RevolutionBody sampled_revolution(int d, double a, int n, const F& f) {
  RevolutionBody r{d, a, {}};
  for (int i = 0; i <= n; ++i) {
    const double s = -a + 2.0 * a * i / n;
    r.profile.push_back({s, f(s)});
  }
  // Exact evenness: mirror the upper half.
  for (int i = 0, j = n; i < j; ++i, --j) {
    r.profile[i].s = -r.profile[j].s;
    r.profile[i].f = r.profile[j].f;
  }
  return r;
}

}  // namespace pettylab
