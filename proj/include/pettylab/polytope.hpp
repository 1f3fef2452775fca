#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pettylab/error.hpp"
#include "pettylab/linalg.hpp"

namespace pettylab {

/// Convex polytope in R^3 with a triangulated, outward-oriented boundary.
struct Polytope {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> facets;
  bool symmetric = false;
};

/// One boundary triangle: outward unit normal, area, and its vertex indices.
struct Facet {
  Vec3 normal;
  double area = 0.0;
  std::array<int, 3> vertices{};
};

struct Chord {
  double f = 0.0;  ///< lower end parameter along the line
  double g = 0.0;  ///< upper end parameter
};

inline double max_abs_coordinate(std::span<const Vec3> pts) noexcept {
  double s = 0.0;
  for (const auto& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
  return s;
}

/// True when the point set is closed under negation to `tol` (relative to its scale).
inline bool closed_under_negation(std::span<const Vec3> pts, double tol = 1e-9) {
  const double eps = tol * std::max(1.0, max_abs_coordinate(pts));
  for (const auto& p : pts) {
    bool found = false;
    for (const auto& q : pts)
      if (norm(p + q) <= eps) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

namespace detail {

struct HullFace {
  std::array<int, 3> v;
  Vec3 normal;
  double offset = 0.0;
  bool alive = true;
};

inline std::uint64_t edge_key(int a, int b) noexcept {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

inline HullFace make_face(std::span<const Vec3> pts, int a, int b, int c) {
  HullFace f{{a, b, c}, {}, 0.0, true};
  const Vec3 n = cross(pts[b] - pts[a], pts[c] - pts[a]);
  const double len = norm(n);
  f.normal = len > 0.0 ? n / len : Vec3{};
  f.offset = dot(f.normal, pts[a]);
  return f;
}

}  // namespace detail

/// Convex hull by incremental insertion.
///
/// Points within `tol` (relative to the coordinate scale) of a face plane count as
/// coplanar and do not see that face, so coplanar clusters come out triangulated
/// using only extreme points. Throws FlatBodyError when the input has no interior.
inline Polytope convex_hull(std::span<const Vec3> input, double tol = 1e-10) {
  if (input.size() < 4) throw FlatBodyError("convex_hull: need at least 4 points");
  for (const auto& p : input)
    if (!is_finite(p)) throw InputError("convex_hull: non-finite coordinate");
  const std::vector<Vec3> pts(input.begin(), input.end());
  const int n = static_cast<int>(pts.size());
  const double scale = std::max(max_abs_coordinate(pts), std::numeric_limits<double>::min());
  const double eps = tol * scale;

  // Initial simplex from extreme points.
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (pts[i].x < pts[i0].x) i0 = i;
  int i1 = i0;
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    if (const double d = norm(pts[i] - pts[i0]); d > best) best = d, i1 = i;
  if (best <= eps) throw FlatBodyError("convex_hull: all points coincide");
  int i2 = i1;
  best = 0.0;
  const Vec3 dir01 = (pts[i1] - pts[i0]) / norm(pts[i1] - pts[i0]);
  for (int i = 0; i < n; ++i)
    if (const double d = norm(cross(pts[i] - pts[i0], dir01)); d > best) best = d, i2 = i;
  if (best <= eps) throw FlatBodyError("convex_hull: all points are collinear");
  int i3 = i2;
  best = 0.0;
  const Vec3 plane_n = normalized(cross(pts[i1] - pts[i0], pts[i2] - pts[i0]));
  for (int i = 0; i < n; ++i)
    if (const double d = std::abs(dot(pts[i] - pts[i0], plane_n)); d > best) best = d, i3 = i;
  if (best <= eps) throw FlatBodyError("convex_hull: all points are coplanar");

  std::vector<detail::HullFace> faces;
  std::unordered_map<std::uint64_t, int> edge_owner;  // directed edge -> face
  auto add_face = [&](int a, int b, int c) {
    faces.push_back(detail::make_face(pts, a, b, c));
    const int id = static_cast<int>(faces.size()) - 1;
    edge_owner[detail::edge_key(a, b)] = id;
    edge_owner[detail::edge_key(b, c)] = id;
    edge_owner[detail::edge_key(c, a)] = id;
  };
  if (det3(pts[i1] - pts[i0], pts[i2] - pts[i0], pts[i3] - pts[i0]) > 0.0) std::swap(i1, i2);
  add_face(i0, i1, i2);
  add_face(i0, i3, i1);
  add_face(i1, i3, i2);
  add_face(i2, i3, i0);

  // Farther points first: they are more likely to be extreme, which keeps the hull small.
  const Vec3 centroid = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dist2[i] = dot(pts[i] - centroid, pts[i] - centroid);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist2[a] > dist2[b]; });

  std::vector<char> visible;
  std::vector<int> stack, region;
  for (const int p : order) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    int seed = -1;
    double seed_dist = eps;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (!faces[f].alive) continue;
      const double d = dot(faces[f].normal, pts[p]) - faces[f].offset;
      if (d > seed_dist) seed_dist = d, seed = f;
    }
    if (seed < 0) continue;

    // Connected visible region grown from the most visible face.
    visible.assign(faces.size(), 0);
    region.clear();
    stack.assign(1, seed);
    visible[seed] = 1;
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      region.push_back(f);
      for (int e = 0; e < 3; ++e) {
        const int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        const auto it = edge_owner.find(detail::edge_key(b, a));
        if (it == edge_owner.end()) continue;
        const int g = it->second;
        if (visible[g] || !faces[g].alive) continue;
        if (dot(faces[g].normal, pts[p]) - faces[g].offset > eps) {
          visible[g] = 1;
          stack.push_back(g);
        }
      }
    }

    std::vector<std::array<int, 2>> horizon;
    for (const int f : region) {
      for (int e = 0; e < 3; ++e) {
        const int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
        const auto it = edge_owner.find(detail::edge_key(b, a));
        if (it == edge_owner.end() || !visible[it->second]) horizon.push_back({a, b});
      }
    }
    for (const int f : region) {
      faces[f].alive = false;
      for (int e = 0; e < 3; ++e) {
        const auto key = detail::edge_key(faces[f].v[e], faces[f].v[(e + 1) % 3]);
        if (const auto it = edge_owner.find(key); it != edge_owner.end() && it->second == f) edge_owner.erase(it);
      }
    }
    for (const auto& [a, b] : horizon) add_face(a, b, p);
  }

  // Compact: keep used vertices, drop zero-area triangles.
  Polytope out;
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  const double area_eps = eps * eps;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    if (norm(cross(pts[f.v[1]] - pts[f.v[0]], pts[f.v[2]] - pts[f.v[0]])) <= area_eps) continue;
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      int& r = remap[f.v[k]];
      if (r < 0) {
        r = static_cast<int>(out.vertices.size());
        out.vertices.push_back(pts[f.v[k]]);
      }
      tri[k] = r;
    }
    out.facets.push_back(tri);
  }
  out.symmetric = closed_under_negation(out.vertices);
  return out;
}

inline Polytope convex_hull(std::initializer_list<Vec3> pts, double tol = 1e-10) {
  return convex_hull(std::span<const Vec3>(pts.begin(), pts.size()), tol);
}

/// Per-triangle outward unit normals and areas.
inline std::vector<Facet> facet_data(const Polytope& p) {
  std::vector<Facet> out;
  out.reserve(p.facets.size());
  for (const auto& t : p.facets) {
    const Vec3 n = cross(p.vertices[t[1]] - p.vertices[t[0]], p.vertices[t[2]] - p.vertices[t[0]]);
    const double len = norm(n);
    if (len == 0.0) continue;
    out.push_back({n / len, 0.5 * len, t});
  }
  return out;
}

inline double volume(const Polytope& p) {
  double v = 0.0;
  for (const auto& t : p.facets) v += det3(p.vertices[t[0]], p.vertices[t[1]], p.vertices[t[2]]);
  return v / 6.0;
}

inline double surface_area(const Polytope& p) {
  double a = 0.0;
  for (const auto& f : facet_data(p)) a += f.area;
  return a;
}

/// Support function: max over vertices of <x, v>.
inline double support(const Polytope& p, const Vec3& x) {
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) h = std::max(h, dot(x, v));
  return h;
}

/// Apply a linear map to every vertex. Faces keep their orientation when det(T) > 0.
inline Polytope transformed(const Polytope& p, const Mat3& t) {
  if (!(t.det() > 0.0)) throw InputError("transformed: map must preserve orientation");
  Polytope out = p;
  for (auto& v : out.vertices) v = t * v;
  return out;
}

inline Polytope translated(const Polytope& p, const Vec3& shift) {
  Polytope out = p;
  for (auto& v : out.vertices) v += shift;
  out.symmetric = closed_under_negation(out.vertices);
  return out;
}

inline Polytope scaled(const Polytope& p, double s) {
  if (!(s > 0.0)) throw InputError("scaled: factor must be positive");
  Polytope out = p;
  for (auto& v : out.vertices) v *= s;
  return out;
}

/// Intersection of the line {base + t dir} with the polytope, by clipping against
/// every facet half-space. nullopt when the line misses the body.
inline std::optional<Chord> chord(const Polytope& p, const Vec3& base, const Vec3& dir, double tol = 1e-9) {
  const double scale = std::max(1.0, max_abs_coordinate(p.vertices));
  const double eps = tol * scale;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& f : facet_data(p)) {
    const double nd = dot(f.normal, dir);
    const double r = dot(f.normal, p.vertices[f.vertices[0]]) - dot(f.normal, base);
    if (std::abs(nd) <= 1e-12) {
      if (r < -eps) return std::nullopt;
      continue;
    }
    const double t = r / nd;
    if (nd > 0.0)
      hi = std::min(hi, t);
    else
      lo = std::max(lo, t);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) return std::nullopt;
  if (lo > hi + eps) return std::nullopt;
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  return Chord{lo, hi};
}

// ---------------------------------------------------------------------------
// Planar helpers.

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double cross2(const Vec2& o, const Vec2& a, const Vec2& b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
inline std::vector<Vec2> convex_hull_2d(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (pts.size() < 3) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Shoelace area of a simple polygon given in order.
inline double polygon_area(std::span<const Vec2> poly) noexcept {
  double a = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    a += p.x * q.y - p.y * q.x;
  }
  return 0.5 * std::abs(a);
}

// ---------------------------------------------------------------------------
// Cross-sections.

/// Unique undirected edges of the triangulated boundary.
inline std::vector<std::array<int, 2>> edges(const Polytope& p) {
  std::vector<std::array<int, 2>> e;
  e.reserve(3 * p.facets.size());
  for (const auto& t : p.facets)
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      e.push_back({std::min(a, b), std::max(a, b)});
    }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

/// Area of the section K ∩ {<y, x> = s} for unit x. The polygon is assembled from
/// edge crossings sorted by angle around their centroid. Zero outside the open slab.
inline double slice_area(const Polytope& p, std::span<const std::array<int, 2>> edge_list, const Vec3& x, double s) {
  double hmin = std::numeric_limits<double>::infinity(), hmax = -hmin;
  for (const auto& v : p.vertices) {
    const double h = dot(v, x);
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  }
  if (!(s > hmin && s < hmax)) return 0.0;
  const double scale = std::max(1.0, max_abs_coordinate(p.vertices));
  const double on_plane = 1e-13 * scale;

  const auto [u, w] = orthonormal_complement(x);
  std::vector<Vec2> pts;
  auto push = [&](const Vec3& q) {
    const Vec2 c{dot(q, u), dot(q, w)};
    for (const auto& e : pts)
      if (std::abs(e.x - c.x) <= on_plane && std::abs(e.y - c.y) <= on_plane) return;
    pts.push_back(c);
  };
  for (const auto& [ia, ib] : edge_list) {
    const Vec3& a = p.vertices[ia];
    const Vec3& b = p.vertices[ib];
    const double ha = dot(a, x) - s, hb = dot(b, x) - s;
    if (std::abs(ha) <= on_plane) {
      push(a);
    } else if (std::abs(hb) <= on_plane) {
      push(b);
    } else if ((ha < 0.0) != (hb < 0.0)) {
      push(a + (b - a) * (ha / (ha - hb)));
    }
  }
  if (pts.size() < 3) return 0.0;
  Vec2 c{};
  for (const auto& q : pts) c.x += q.x, c.y += q.y;
  c.x /= static_cast<double>(pts.size());
  c.y /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Vec2& a, const Vec2& b) {
    return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
  });
  return polygon_area(pts);
}

inline double slice_area(const Polytope& p, const Vec3& x, double s) { return slice_area(p, edges(p), x, s); }

/// Sorted distinct vertex heights <v, x>; the section area is quadratic between them.
inline std::vector<double> vertex_heights(const Polytope& p, const Vec3& x, double merge_tol = 1e-12) {
  std::vector<double> h;
  h.reserve(p.vertices.size());
  for (const auto& v : p.vertices) h.push_back(dot(v, x));
  std::sort(h.begin(), h.end());
  const double eps = merge_tol * std::max(1.0, max_abs_coordinate(p.vertices));
  std::vector<double> out;
  for (const double v : h)
    if (out.empty() || v - out.back() > eps) out.push_back(v);
  return out;
}

/// Quadratic model of the section area on one piece between consecutive vertex heights,
/// fitted through three interior samples.
struct SlicePiece {
  double lo = 0.0;
  double hi = 0.0;
  std::array<double, 3> samples{};  // at lo + (1/4, 1/2, 3/4)(hi - lo)

  /// Lagrange interpolation through the three samples; exact for the true quadratic.
  double area_at(double s) const noexcept {
    const double len = hi - lo;
    const double t = (s - lo) / len;  // nodes at 0.25, 0.5, 0.75
    const double l0 = (t - 0.5) * (t - 0.75) / ((0.25 - 0.5) * (0.25 - 0.75));
    const double l1 = (t - 0.25) * (t - 0.75) / ((0.5 - 0.25) * (0.5 - 0.75));
    const double l2 = (t - 0.25) * (t - 0.5) / ((0.75 - 0.25) * (0.75 - 0.5));
    const double v = samples[0] * l0 + samples[1] * l1 + samples[2] * l2;
    // Extrapolating to an apex leaves roundoff that sqrt would amplify.
    const double floor = 1e-12 * std::max({samples[0], samples[1], samples[2]});
    return v <= floor ? 0.0 : v;
  }

  /// Simpson's rule, exact for a quadratic.
  double integral() const noexcept {
    return (hi - lo) / 6.0 * (area_at(lo) + 4.0 * samples[1] + area_at(hi));
  }
};

/// Section pieces along x by a sweep over vertex heights: an edge is active on every
/// piece strictly inside its height range, and crosses each sample plane exactly once.
inline std::vector<SlicePiece> slice_pieces(const Polytope& p, const Vec3& x) {
  const auto e = edges(p);
  const auto h = vertex_heights(p, x);
  std::vector<double> vh(p.vertices.size());
  for (std::size_t i = 0; i < vh.size(); ++i) vh[i] = dot(p.vertices[i], x);

  struct Span {
    double lo, hi;
    int a, b;
  };
  std::vector<Span> spans;
  spans.reserve(e.size());
  for (const auto& [a, b] : e) {
    const double ha = vh[a], hb = vh[b];
    if (ha == hb) continue;
    spans.push_back(ha < hb ? Span{ha, hb, a, b} : Span{hb, ha, b, a});
  }
  std::sort(spans.begin(), spans.end(), [](const Span& s, const Span& t) { return s.lo < t.lo; });

  const auto [u, w] = orthonormal_complement(x);
  std::vector<SlicePiece> out;
  std::vector<const Span*> active;
  std::vector<Vec2> pts;
  std::vector<std::pair<double, Vec2>> keyed;
  std::size_t next = 0;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    const double lo = h[k], hi = h[k + 1], len = hi - lo, mid = 0.5 * (lo + hi);
    std::erase_if(active, [&](const Span* s) { return s->hi <= mid; });
    while (next < spans.size() && spans[next].lo <= mid) {
      if (spans[next].hi > mid) active.push_back(&spans[next]);
      ++next;
    }
    SlicePiece piece{lo, hi, {}};
    for (int j = 0; j < 3; ++j) {
      const double s = lo + 0.25 * (j + 1) * len;
      pts.clear();
      for (const Span* sp : active) {
        const double t = (s - sp->lo) / (sp->hi - sp->lo);
        const Vec3 q = p.vertices[sp->a] + (p.vertices[sp->b] - p.vertices[sp->a]) * t;
        pts.push_back({dot(q, u), dot(q, w)});
      }
      if (pts.size() < 3) continue;
      Vec2 c{};
      for (const auto& q : pts) c.x += q.x, c.y += q.y;
      c.x /= static_cast<double>(pts.size());
      c.y /= static_cast<double>(pts.size());
      keyed.clear();
      for (const auto& q : pts) keyed.push_back({std::atan2(q.y - c.y, q.x - c.x), q});
      std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = keyed[i].second;
      piece.samples[j] = polygon_area(pts);
    }
    out.push_back(piece);
  }
  return out;
}

/// ∫ slice_area ds over the full width; equals the volume.
inline double integrate_slice_areas(const Polytope& p, const Vec3& x) {
  double v = 0.0;
  for (const auto& piece : slice_pieces(p, x)) v += piece.integral();
  return v;
}

}  // namespace pettylab
