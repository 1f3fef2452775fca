#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "pettylab/body.hpp"
#include "pettylab/error.hpp"
#include "pettylab/functionals.hpp"
#include "pettylab/linalg.hpp"
#include "pettylab/polytope.hpp"
#include "pettylab/revolution.hpp"
#include "pettylab/zonotope.hpp"

namespace pettylab {

/// Chords of P parallel to ν over a set of base points in ν^⊥.
struct ChordProfile {
  Vec3 nu;
  std::vector<Vec3> base;  ///< points of ν^⊥
  std::vector<Chord> chords;

  double w(std::size_t i) const { return 0.5 * (chords[i].g - chords[i].f); }
  double u(std::size_t i) const { return 0.5 * (chords[i].f + chords[i].g); }
};

namespace detail {

struct Plane {
  Vec3 n;
  double c;  // <n, y> <= c
};

inline std::vector<Plane> facet_planes(const Polytope& p) {
  std::vector<Plane> out;
  for (const auto& f : facet_data(p)) out.push_back({f.normal, dot(f.normal, p.vertices[f.vertices[0]])});
  return out;
}

inline std::optional<Chord> clip_line(const std::vector<Plane>& planes, const Vec3& base, const Vec3& dir, double eps) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& pl : planes) {
    const double nd = dot(pl.n, dir);
    const double r = pl.c - dot(pl.n, base);
    if (std::abs(nd) <= 1e-12) {
      if (r < -eps) return std::nullopt;
      continue;
    }
    if (nd > 0.0)
      hi = std::min(hi, r / nd);
    else
      lo = std::max(lo, r / nd);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi + eps) return std::nullopt;
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  return Chord{lo, hi};
}

/// Base points where w = (g - f)/2 may break: projected vertices and the crossings of
/// projected edges (an upper edge crossing a lower one over ν^⊥ creates a kink of w
/// that no vertex projection sees).
inline std::vector<Vec2> steiner_bases(const Polytope& p, const Vec3& u, const Vec3& w, double eps,
                                       std::size_t& vertex_count) {
  std::vector<Vec2> pts;
  for (const auto& v : p.vertices) pts.push_back({dot(v, u), dot(v, w)});
  vertex_count = pts.size();

  struct Seg {
    Vec2 a, b;
    double xmin, xmax, ymin, ymax;
  };
  std::vector<Seg> segs;
  for (const auto& [i, j] : edges(p)) {
    const Vec2 a = pts[i], b = pts[j];
    if (std::hypot(b.x - a.x, b.y - a.y) <= eps) continue;
    segs.push_back({a, b, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)});
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& s, const Seg& t) { return s.xmin < t.xmin; });
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Seg& s = segs[i];
    for (std::size_t j = i + 1; j < segs.size() && segs[j].xmin <= s.xmax; ++j) {
      const Seg& t = segs[j];
      if (t.ymin > s.ymax || s.ymin > t.ymax) continue;
      const double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
      const double ex = t.b.x - t.a.x, ey = t.b.y - t.a.y;
      const double den = dx * ey - dy * ex;
      const double len = std::hypot(dx, dy) * std::hypot(ex, ey);
      if (std::abs(den) <= 1e-12 * len) continue;
      const double fx = t.a.x - s.a.x, fy = t.a.y - s.a.y;
      const double a = (fx * ey - fy * ex) / den;
      const double b = (fx * dy - fy * dx) / den;
      constexpr double inner = 1e-9;
      if (a <= inner || a >= 1.0 - inner || b <= inner || b >= 1.0 - inner) continue;
      pts.push_back({s.a.x + a * dx, s.a.y + a * dy});
    }
  }
  // Merge near-duplicate crossings.
  std::sort(pts.begin() + static_cast<std::ptrdiff_t>(vertex_count), pts.end(),
            [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Vec2> out(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(vertex_count));
  for (std::size_t k = vertex_count; k < pts.size(); ++k) {
    if (out.size() > vertex_count) {
      const Vec2& q = out.back();
      if (std::abs(q.x - pts[k].x) <= eps && std::abs(q.y - pts[k].y) <= eps) continue;
    }
    out.push_back(pts[k]);
  }
  return out;
}

/// Area of the face of P with outer normal ν, zero when that face is an edge or vertex.
inline double face_area(const Polytope& p, const Vec3& nu, double h) {
  double area = 0.0;
  const double tol = 1e-12 * std::max(1.0, h);
  for (const auto& f : facet_data(p))
    if (std::abs(dot(p.vertices[f.vertices[0]], nu) - h) <= tol && dot(f.normal, nu) > 1.0 - 1e-12) area += f.area;
  return area;
}

}  // namespace detail

/// Chord profile of P along ν over vertex projections and projected-edge crossings.
inline ChordProfile chord_profile(const Polytope& p, const Vec3& nu_in) {
  require_solid(Body{p}, "steiner");
  const Vec3 nu = normalized(nu_in);
  const auto [u, w] = orthonormal_complement(nu);
  const double scale = std::max(1.0, max_abs_coordinate(p.vertices));
  const double eps = 1e-10 * scale;
  const auto planes = detail::facet_planes(p);
  std::size_t nv = 0;
  const auto bases = detail::steiner_bases(p, u, w, eps, nv);

  ChordProfile prof{nu, {}, {}};
  for (std::size_t k = 0; k < bases.size(); ++k) {
    const Vec3 b = bases[k].x * u + bases[k].y * w;
    auto c = detail::clip_line(planes, b, nu, 1e-9 * scale);
    if (k < nv) {
      // A vertex always lies on its own chord; clipping tolerance can shave it off.
      const double h = dot(p.vertices[k], nu);
      if (!c) c = Chord{h, h};
      c->f = std::min(c->f, h);
      c->g = std::max(c->g, h);
    }
    if (!c) continue;
    prof.base.push_back(b);
    prof.chords.push_back(*c);
  }
  return prof;
}

/// Steiner symmetral S_νP: every chord parallel to ν recentred on ν^⊥.
inline Polytope steiner(const Polytope& p, const Vec3& nu) {
  const auto prof = chord_profile(p, nu);
  std::vector<Vec3> pts;
  pts.reserve(2 * prof.base.size());
  for (std::size_t i = 0; i < prof.base.size(); ++i) {
    const double half = prof.w(i);
    pts.push_back(prof.base[i] + half * prof.nu);
    pts.push_back(prof.base[i] - half * prof.nu);
  }
  return convex_hull(pts);
}

inline Vec3 reflect(const Vec3& v, const Vec3& unit_normal) { return v - 2.0 * dot(v, unit_normal) * unit_normal; }

/// Reflection defect V(conv(P ∪ RP)) / V(P) - 1 for R the reflection through ν^⊥.
/// A volume gap is insensitive to the poorly conditioned normals of sliver facets.
inline double reflection_defect(const Polytope& p, const Vec3& nu) {
  const Vec3 n = normalized(nu);
  std::vector<Vec3> pts = p.vertices;
  for (const auto& v : p.vertices) pts.push_back(reflect(v, n));
  return volume(convex_hull(pts)) / volume(p) - 1.0;
}

inline bool is_reflection_symmetric(const Polytope& p, const Vec3& nu, double tol = 1e-9) {
  return reflection_defect(p, nu) <= tol;
}

/// Iterated Steiner symmetrization in the given directions. Exact symmetrals can gain
/// vertices quadratically per step, so after any step with more than `max_vertices`
/// vertices the body is replaced by the hull of its support points over a fixed
/// Fibonacci grid of `max_vertices` directions, rescaled to the previous volume.
inline Polytope steiner_iterate(Polytope p, const std::vector<Vec3>& directions, std::size_t max_vertices = 200,
                                std::vector<double>* roundness_trace = nullptr);

/// Schwartz symmetral T_νP as a body of revolution: the slice at height s becomes a disc
/// of the same area. Nodes at the vertex heights in [0, a] and at 0, with
/// `samples_per_piece` uniform subdivisions of every piece, mirrored to [-a, 0).
inline RevolutionBody schwartz(const Polytope& p, const Vec3& nu_in, int samples_per_piece = 8) {
  require_solid(Body{p}, "schwartz");
  if (!p.symmetric) throw SymmetryError("schwartz: polytope must be centrally symmetric");
  if (samples_per_piece < 1) throw InputError("schwartz: samples per piece must be >= 1");
  const Vec3 nu = normalized(nu_in);
  const double a = support(p, nu);
  const auto pieces = slice_pieces(p, nu);

  // The top section is the face in direction ν; extrapolating the last piece there
  // leaves an absolute roundoff whose root breaks concavity.
  const double top = detail::face_area(p, nu, a);
  const double vol = volume(p);
  // Per unit height, the volume lost by a linear radius between two nodes.
  const double defect_tol = 1e-5 * vol / (2.0 * a);

  std::vector<ProfileNode> upper;
  auto radius = [](double area) { return std::sqrt(std::max(area, 0.0) / std::numbers::pi); };
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& piece = pieces[k];
    if (piece.hi <= 0.0) continue;
    const bool last = k + 1 == pieces.size();
    auto area = [&](double s) { return last && s == piece.hi ? top : piece.area_at(s); };
    // Bisect until π ∫ f_lin^2 matches ∫ A, which Simpson gives exactly on a quadratic.
    auto refine = [&](auto&& self, double s0, double a0, double s1, double a1, int depth) -> void {
      const double len = s1 - s0, sm = 0.5 * (s0 + s1), am = area(sm);
      const double f0 = radius(a0), f1 = radius(a1);
      const double exact = len / 6.0 * (a0 + 4.0 * am + a1);
      const double linear = std::numbers::pi * len * (f0 * f0 + f0 * f1 + f1 * f1) / 3.0;
      if (depth < 30 && exact - linear > defect_tol * len) {
        self(self, s0, a0, sm, am, depth + 1);
        self(self, sm, am, s1, a1, depth + 1);
        return;
      }
      upper.push_back({s1, f1});
    };
    const double lo = std::max(piece.lo, 0.0);
    double s_prev = lo, a_prev = area(lo);
    if (upper.empty()) upper.push_back({lo, radius(a_prev)});
    for (int j = 1; j <= samples_per_piece; ++j) {
      const double s = lo + (piece.hi - lo) * j / samples_per_piece;
      const double as = area(j == samples_per_piece ? piece.hi : s);
      refine(refine, s_prev, a_prev, s, as, 0);
      s_prev = s, a_prev = as;
    }
  }
  if (upper.empty() || upper.front().s != 0.0) throw InputError("schwartz: body does not straddle ν^⊥");
  upper.back().s = a;

  RevolutionBody r{3, a, {}};
  for (std::size_t i = upper.size(); i-- > 1;) r.profile.push_back({-upper[i].s, upper[i].f});
  r.profile.insert(r.profile.end(), upper.begin(), upper.end());
  validate(r);
  return r;
}

struct MonotonicityPair {
  double before = 0.0;
  double after = 0.0;
};

/// V_2(Π(S_νP) | H) against V_2(ΠP | H) for a plane H ∋ ν given by its unit normal.
inline MonotonicityPair steiner_projection_monotonicity(const Polytope& p, const Vec3& nu_in, const Vec3& h_normal_in) {
  const Vec3 nu = normalized(nu_in);
  const Vec3 hn = normalized(h_normal_in);
  if (std::abs(dot(hn, nu)) > 1e-9) throw InputError("steiner monotonicity: the plane H must contain ν");
  const Vec3 w = normalized(cross(hn, nu));
  const auto before = zonogon_area(polytope_projection_body(p), nu, w);
  const auto after = zonogon_area(polytope_projection_body(steiner(p, nu)), nu, w);
  return {before, after};
}

/// Normal of span{ν, e}.
inline Vec3 plane_normal(const Vec3& nu, const Vec3& e) {
  const Vec3 n = cross(nu, e);
  if (norm(n) <= 1e-12 * norm(nu) * norm(e)) throw InputError("plane_normal: spanning vectors are parallel");
  return normalized(n);
}

struct SchwartzRatio {
  double before = 0.0;          ///< ratio(P, x)
  double after = 0.0;           ///< axis ratio of T_xP from exact slice areas
  double after_sampled = 0.0;   ///< the same through the piecewise-linear profile
};

/// ratio(T_xP, x) against ratio(P, x).
inline SchwartzRatio schwartz_ratio_monotonicity(const Polytope& p, const Vec3& x_in, int samples_per_piece = 8) {
  const Vec3 x = normalized(x_in);
  const auto sym = schwartz(p, x, samples_per_piece);
  SchwartzRatio r;
  r.before = ratio(Body{p}, x);
  r.after = q_direction(p, x);
  r.after_sampled = axis_ratio(sym);
  return r;
}

inline Vec3 centroid(const Polytope& p) {
  Vec3 c{};
  double v = 0.0;
  for (const auto& t : p.facets) {
    const Vec3& a = p.vertices[t[0]];
    const Vec3& b = p.vertices[t[1]];
    const Vec3& d = p.vertices[t[2]];
    const double tv = det3(a, b, d) / 6.0;
    c += tv * (a + b + d) / 4.0;
    v += tv;
  }
  return c / v;
}

/// Circumradius over inradius about the centroid; 1 only for a ball.
inline double roundness(const Polytope& p) {
  const Vec3 c = centroid(p);
  double outer = 0.0;
  for (const auto& v : p.vertices) outer = std::max(outer, norm(v - c));
  double inner = std::numeric_limits<double>::infinity();
  for (const auto& f : facet_data(p)) inner = std::min(inner, dot(f.normal, p.vertices[f.vertices[0]] - c));
  return outer / inner;
}

inline Polytope steiner_iterate(Polytope p, const std::vector<Vec3>& directions, std::size_t max_vertices,
                                std::vector<double>* roundness_trace) {
  const auto grid = fibonacci_sphere(std::max<std::size_t>(max_vertices, 16));
  if (roundness_trace) roundness_trace->push_back(roundness(p));
  for (const auto& nu : directions) {
    const double v0 = volume(p);
    p = steiner(p, nu);
    if (p.vertices.size() > max_vertices) {
      std::vector<char> keep(p.vertices.size(), 0);
      for (const auto& u : grid.points) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.vertices.size(); ++i)
          if (dot(p.vertices[i], u) > dot(p.vertices[best], u)) best = i;
        keep[best] = 1;
      }
      std::vector<Vec3> kept;
      for (std::size_t i = 0; i < keep.size(); ++i)
        if (keep[i]) kept.push_back(p.vertices[i]);
      p = convex_hull(kept);
      p = scaled(p, std::cbrt(v0 / volume(p)));
    }
    if (roundness_trace) roundness_trace->push_back(roundness(p));
  }
  return p;
}

}  // namespace pettylab
