#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <variant>
#include <vector>

#include "pettylab/error.hpp"
#include "pettylab/linalg.hpp"
#include "pettylab/polytope.hpp"
#include "pettylab/revolution.hpp"
#include "pettylab/zonotope.hpp"

namespace pettylab {

/// Euclidean ball of the given radius centred at the origin (d = 3).
struct Ball {
  double radius = 1.0;
};

using Body = std::variant<GeneratorSet, Polytope, RevolutionBody, Ball>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline const char* kind_name(const Body& b) {
  return std::visit(overloaded{[](const GeneratorSet&) { return "zonotope"; }, [](const Polytope&) { return "polytope"; },
                               [](const RevolutionBody&) { return "revolution"; }, [](const Ball&) { return "ball"; }},
                    b);
}

/// Support function of a revolution body about e3: the max of s x_3 + f(s) |x_perp|
/// is attained at a node of the piecewise-linear profile.
inline double support(const RevolutionBody& r, const Vec3& x) {
  if (r.d != 3) throw InputError("support: revolution bodies are only embedded for d = 3");
  const double perp = std::hypot(x.x, x.y);
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& n : r.profile) h = std::max(h, n.s * x.z + n.f * perp);
  return h;
}

inline double support(const Body& b, const Vec3& x) {
  return std::visit(overloaded{[&](const GeneratorSet& z) { return z_support(z, x); },
                               [&](const Polytope& p) { return support(p, x); },
                               [&](const RevolutionBody& r) { return support(r, x); },
                               [&](const Ball& ball) { return ball.radius * norm(x); }},
                    b);
}

inline double volume(const Body& b) {
  return std::visit(overloaded{[](const GeneratorSet& z) { return z_volume(z); },
                               [](const Polytope& p) { return volume(p); },
                               [](const RevolutionBody& r) { return rev_volume(r); },
                               [](const Ball& ball) { return 4.0 / 3.0 * std::numbers::pi * std::pow(ball.radius, 3); }},
                    b);
}

inline bool is_symmetric(const Body& b) {
  return std::visit(overloaded{[](const GeneratorSet&) { return true; }, [](const Polytope& p) { return p.symmetric; },
                               [](const RevolutionBody&) { return true; }, [](const Ball&) { return true; }},
                    b);
}

/// Throws FlatBodyError unless the body has interior.
inline void require_solid(const Body& b, const char* where) {
  std::visit(overloaded{[&](const GeneratorSet& z) { require_solid(z, where); },
                        [&](const Polytope& p) {
                          const double s = std::max(1.0, max_abs_coordinate(p.vertices));
                          if (p.facets.size() < 4 || !(volume(p) > 1e-12 * s * s * s))
                            throw FlatBodyError(std::string(where) + ": polytope has empty interior");
                        },
                        [&](const RevolutionBody& r) { validate(r); },
                        [&](const Ball& ball) {
                          if (!(ball.radius > 0.0)) throw FlatBodyError(std::string(where) + ": ball radius must be positive");
                        }},
             b);
}

/// Atom of a surface area measure: unit outer normal with its area weight.
struct SurfaceAtom {
  Vec3 normal;
  double area = 0.0;
};

inline std::vector<SurfaceAtom> surface_measure(const Polytope& p) {
  std::vector<SurfaceAtom> out;
  for (const auto& f : facet_data(p)) out.push_back({f.normal, f.area});
  return out;
}

/// A generic-position zonotope has the parallelogram facets spanned by 2x_i, 2x_j with
/// normals ±(x_i × x_j)/|x_i × x_j|. Coplanar families share a normal and their areas add,
/// so pairwise atoms give the exact measure in every position.
inline std::vector<SurfaceAtom> surface_measure(const GeneratorSet& z) {
  require_solid(z, "surface_measure");
  std::vector<SurfaceAtom> out;
  const auto& g = z.gens;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Vec3 c = cross(g[i], g[j]);
      const double len = norm(c);
      if (len <= 1e-14 * norm(g[i]) * norm(g[j])) continue;
      out.push_back({c / len, 4.0 * len});
      out.push_back({-c / len, 4.0 * len});
    }
  return out;
}

inline std::vector<SurfaceAtom> surface_measure(const Body& b) {
  return std::visit(overloaded{[](const GeneratorSet& z) { return surface_measure(z); },
                               [](const Polytope& p) { return surface_measure(p); },
                               [](const auto&) -> std::vector<SurfaceAtom> {
                                 throw InputError("surface_measure: only polytopes and zonotopes are supported");
                               }},
                    b);
}

/// Vertex description of a zonotope: hull of all 2^n signed sums.
inline Polytope zonotope_polytope(const GeneratorSet& z) {
  require_solid(z, "zonotope_polytope");
  if (z.gens.size() > 16) throw InputError("zonotope_polytope: at most 16 generators");
  std::vector<Vec3> pts;
  const std::size_t n = z.gens.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec3 p{};
    for (std::size_t i = 0; i < n; ++i) p += (mask >> i & 1U) ? z.gens[i] : -z.gens[i];
    pts.push_back(p);
  }
  Polytope p = convex_hull(pts);
  p.symmetric = true;
  return p;
}

/// Symmetric polytope conv{±v_i}.
inline Polytope symmetric_hull(const std::vector<Vec3>& half) {
  std::vector<Vec3> pts;
  pts.reserve(2 * half.size());
  for (const auto& v : half) {
    pts.push_back(v);
    pts.push_back(-v);
  }
  return convex_hull(pts);
}

}  // namespace pettylab
