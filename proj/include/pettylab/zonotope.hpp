#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "pettylab/error.hpp"
#include "pettylab/linalg.hpp"
#include "pettylab/polytope.hpp"

namespace pettylab {

/// Generators x_1..x_n of the zonotope Z = sum_i [-x_i, x_i].
struct GeneratorSet {
  std::vector<Vec3> gens;
};

inline void validate(const GeneratorSet& z) {
  for (std::size_t i = 0; i < z.gens.size(); ++i) {
    if (!is_finite(z.gens[i])) throw InputError("generator " + std::to_string(i) + " is not finite");
    if (norm(z.gens[i]) == 0.0) throw InputError("generator " + std::to_string(i) + " is zero");
  }
}

/// h_Z(x) = sum_i |<x, x_i>|.
inline double z_support(const GeneratorSet& z, const Vec3& x) noexcept {
  double h = 0.0;
  for (const auto& g : z.gens) h += std::abs(dot(x, g));
  return h;
}

/// V(Z) = 8 sum_{i<j<k} |det(x_i, x_j, x_k)|.
inline double z_volume(const GeneratorSet& z) noexcept {
  const auto& g = z.gens;
  const std::size_t n = g.size();
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 c = cross(g[i], g[j]);
      for (std::size_t k = j + 1; k < n; ++k) v += std::abs(dot(c, g[k]));
    }
  return 8.0 * v;
}

/// Shadow area V_2(Z | x^⊥) = 4 sum_{i<j} |det(x_i, x_j, x)| for unit x.
inline double z_shadow_area(const GeneratorSet& z, const Vec3& x) noexcept {
  const auto& g = z.gens;
  double a = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) a += std::abs(det3(g[i], g[j], x));
  return 4.0 * a;
}

inline double generator_scale(const GeneratorSet& z) noexcept {
  double s = 0.0;
  for (const auto& g : z.gens) s += norm(g);
  return s;
}

/// Coplanar (or too few) generators.
inline bool is_flat(const GeneratorSet& z, double rel_tol = 1e-12) noexcept {
  if (z.gens.size() < 3) return true;
  const double s = generator_scale(z);
  return !(z_volume(z) > rel_tol * s * s * s);
}

inline void require_solid(const GeneratorSet& z, const char* where) {
  validate(z);
  if (is_flat(z)) throw FlatBodyError(std::string(where) + ": generators are coplanar");
}

/// Generators of ΠZ: one 4 (x_i × x_j) per unordered pair with a nonzero cross product.
inline GeneratorSet projection_body(const GeneratorSet& z) {
  require_solid(z, "projection_body");
  const auto& g = z.gens;
  GeneratorSet out;
  out.gens.reserve(g.size() * (g.size() - 1) / 2);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Vec3 c = cross(g[i], g[j]);
      if (norm(c) <= 1e-14 * norm(g[i]) * norm(g[j])) continue;
      out.gens.push_back(4.0 * c);
    }
  return out;
}

/// h_{Π²Z}(x) as the direct tuple sum 8 sum_{[n]^4} |det(x_i × x_j, x_k × x_l, x)|,
/// evaluated over i<j, k<l with multiplicity 4.
inline double second_proj_support(const GeneratorSet& z, const Vec3& x) {
  require_solid(z, "second_proj_support");
  const auto& g = z.gens;
  std::vector<Vec3> wedges;
  wedges.reserve(g.size() * (g.size() - 1) / 2);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) wedges.push_back(cross(g[i], g[j]));
  double sum = 0.0;
  for (const auto& a : wedges) {
    const Vec3 ax = cross(a, x);
    for (const auto& b : wedges) sum += std::abs(dot(ax, b));
  }
  return 32.0 * sum;
}

/// Combine parallel and antipodal generators into one (the support function is unchanged).
inline GeneratorSet merge_parallel(const GeneratorSet& z, double tol = 1e-12) {
  GeneratorSet out;
  std::vector<Vec3> dirs;
  for (const auto& g : z.gens) {
    const double len = norm(g);
    if (len == 0.0) continue;
    const Vec3 u = g / len;
    bool merged = false;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      if (norm(cross(u, dirs[k])) <= tol) {
        out.gens[k] += dot(u, dirs[k]) > 0.0 ? g : -g;
        merged = true;
        break;
      }
    }
    if (!merged) {
      dirs.push_back(u);
      out.gens.push_back(g);
    }
  }
  return out;
}

/// ΠP = sum over boundary triangles of [-(A_F/2) n_F, (A_F/2) n_F].
inline GeneratorSet polytope_projection_body(const Polytope& p, bool merge_antipodal = false) {
  GeneratorSet out;
  for (const auto& f : facet_data(p)) out.gens.push_back(0.5 * f.area * f.normal);
  return merge_antipodal ? merge_parallel(out) : out;
}

/// Support of a zonotope restricted to a 2-plane: area of the projected zonogon
/// 4 sum_{a<b} |det_2(p_a, p_b)| with p the coordinates in an orthonormal basis (u, w).
inline double zonogon_area(const GeneratorSet& z, const Vec3& u, const Vec3& w) noexcept {
  double a = 0.0;
  const auto& g = z.gens;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi = dot(g[i], u), yi = dot(g[i], w);
    for (std::size_t j = i + 1; j < g.size(); ++j) a += std::abs(xi * dot(g[j], w) - yi * dot(g[j], u));
  }
  return 4.0 * a;
}

inline GeneratorSet transformed(const GeneratorSet& z, const Mat3& t) {
  GeneratorSet out = z;
  for (auto& g : out.gens) g = t * g;
  return out;
}

}  // namespace pettylab
