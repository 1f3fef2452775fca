#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "pettylab/body.hpp"
#include "pettylab/polytope.hpp"
#include "pettylab/revolution.hpp"
#include "pettylab/zonotope.hpp"

namespace pettylab {

using Rng = std::mt19937_64;

inline Vec3 gaussian_vec(Rng& rng) {
  std::normal_distribution<double> g;
  const double x = g(rng), y = g(rng), z = g(rng);
  return {x, y, z};
}

inline Vec3 random_unit(Rng& rng) {
  for (;;) {
    const Vec3 v = gaussian_vec(rng);
    if (norm(v) > 1e-6) return normalized(v);
  }
}

/// Zonotope with a uniformly drawn number of Gaussian generators in [nmin, nmax].
inline GeneratorSet random_zonotope(Rng& rng, int nmin = 3, int nmax = 8) {
  std::uniform_int_distribution<int> count(nmin, nmax);
  for (;;) {
    GeneratorSet z;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) z.gens.push_back(gaussian_vec(rng));
    if (!is_flat(z, 1e-6)) return z;
  }
}

/// conv{±v_i} for `pairs` Gaussian points.
inline Polytope random_symmetric_hull(Rng& rng, int pairs) {
  for (;;) {
    std::vector<Vec3> half;
    for (int i = 0; i < pairs; ++i) half.push_back(gaussian_vec(rng));
    try {
      Polytope p = symmetric_hull(half);
      if (volume(p) > 1e-3) return p;
    } catch (const FlatBodyError&) {
    }
  }
}

/// Symmetric hull with a uniformly drawn number of pairs in [pmin, pmax].
inline Polytope random_symmetric_hull(Rng& rng, int pmin, int pmax) {
  std::uniform_int_distribution<int> count(pmin, pmax);
  return random_symmetric_hull(rng, count(rng));
}

/// Hull of `n` Gaussian points (generally not symmetric).
inline Polytope random_polytope(Rng& rng, int n) {
  for (;;) {
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) pts.push_back(gaussian_vec(rng));
    try {
      Polytope p = convex_hull(pts);
      if (volume(p) > 1e-3) return p;
    } catch (const FlatBodyError&) {
    }
  }
}

/// Even concave piecewise-linear profile on [-a, a]: nonincreasing on [0, a] with
/// decreasing slopes, `pieces` segments per half.
inline RevolutionBody random_profile(Rng& rng, int d, int pieces = 6) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double a = 0.5 + 1.5 * uni(rng);
  std::vector<double> cuts{0.0, a};
  for (int i = 1; i < pieces; ++i) cuts.push_back(a * uni(rng));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> slope;
  double acc = uni(rng) < 0.3 ? 0.0 : uni(rng);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    slope.push_back(-acc);
    acc += 2.0 * uni(rng);
  }
  std::vector<double> f(cuts.size());
  f.back() = uni(rng) < 0.3 ? 0.0 : uni(rng);
  for (std::size_t i = cuts.size() - 1; i-- > 0;) f[i] = f[i + 1] - slope[i] * (cuts[i + 1] - cuts[i]);
  RevolutionBody r{d, a, {}};
  for (std::size_t i = cuts.size(); i-- > 1;) r.profile.push_back({-cuts[i], f[i]});
  for (std::size_t i = 0; i < cuts.size(); ++i) r.profile.push_back({cuts[i], f[i]});
  return r;
}

}  // namespace pettylab
