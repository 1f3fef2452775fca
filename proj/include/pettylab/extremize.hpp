#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "pettylab/linalg.hpp"

namespace pettylab {

struct SphereExtremum {
  double value = 0.0;
  Vec3 direction;
  int refinement_iterations = 0;  ///< Nelder-Mead iterations actually used
};

namespace detail {

/// Downhill simplex in the tangent chart x(α, β) = normalize(x0 + α u + β w), minimizing g.
template <class G>
SphereExtremum refine_in_chart(const G& g, const Vec3& x0, double step, int max_iter, double tol) {
  const auto [u, w] = orthonormal_complement(x0);
  auto point = [&](const std::array<double, 2>& c) { return normalized(x0 + c[0] * u + c[1] * w); };
  auto eval = [&](const std::array<double, 2>& c) { return g(point(c)); };

  std::array<std::array<double, 2>, 3> s{{{0.0, 0.0}, {step, 0.0}, {0.0, step}}};
  std::array<double, 3> fv{eval(s[0]), eval(s[1]), eval(s[2])};
  int it = 0;
  for (; it < max_iter; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const auto sb = s;
    const auto fb = fv;
    for (int k = 0; k < 3; ++k) s[k] = sb[idx[k]], fv[k] = fb[idx[k]];
    if (std::abs(fv[2] - fv[0]) <= tol * std::max(1.0, std::abs(fv[0]))) break;

    const std::array<double, 2> c{0.5 * (s[0][0] + s[1][0]), 0.5 * (s[0][1] + s[1][1])};
    auto along = [&](double t) { return std::array<double, 2>{c[0] + t * (s[2][0] - c[0]), c[1] + t * (s[2][1] - c[1])}; };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fv[0]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr)
        s[2] = xe, fv[2] = fe;
      else
        s[2] = xr, fv[2] = fr;
    } else if (fr < fv[1]) {
      s[2] = xr, fv[2] = fr;
    } else {
      const auto xc = fr < fv[2] ? along(-0.5) : along(0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, fv[2])) {
        s[2] = xc, fv[2] = fc;
      } else {
        for (int k = 1; k < 3; ++k) {
          s[k] = {0.5 * (s[0][0] + s[k][0]), 0.5 * (s[0][1] + s[k][1])};
          fv[k] = eval(s[k]);
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {fv[best], point(s[best]), it};
}

}  // namespace detail

/// Extremum of f over S^2: scan every candidate direction, then polish the best
/// `refine_top` of them with a downhill simplex. Heuristic; accuracy is that of the
/// candidate set plus refinement.
template <class F>
SphereExtremum extremize_on_sphere(const F& f, const std::vector<Vec3>& candidates, bool maximize, int refine_iters,
                                   double chart_step, int refine_top = 3, double tol = 1e-6) {
  const double sign = maximize ? -1.0 : 1.0;
  auto g = [&](const Vec3& x) { return sign * f(x); };
  std::vector<double> vals(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) vals[i] = g(candidates[i]);
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

  SphereExtremum best{vals[order[0]], candidates[order[0]], 0};
  std::vector<Vec3> started;
  for (std::size_t k = 0; k < order.size() && static_cast<int>(started.size()) < refine_top && refine_iters > 0; ++k) {
    const Vec3& x0 = candidates[order[k]];
    bool near = false;
    for (const auto& y : started)
      if (norm(cross(x0, y)) < chart_step) near = true;
    if (near) continue;
    started.push_back(x0);
    const auto r = detail::refine_in_chart(g, x0, chart_step, refine_iters, tol);
    best.refinement_iterations = std::max(best.refinement_iterations, r.refinement_iterations);
    if (r.value < best.value) best.value = r.value, best.direction = r.direction;
  }
  best.value *= sign;
  return best;
}

}  // namespace pettylab
