#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "pettylab/body.hpp"
#include "pettylab/error.hpp"
#include "pettylab/extremize.hpp"
#include "pettylab/linalg.hpp"
#include "pettylab/polytope.hpp"
#include "pettylab/quadrature.hpp"
#include "pettylab/revolution.hpp"
#include "pettylab/sphere.hpp"
#include "pettylab/zonotope.hpp"

namespace pettylab {

// ---------------------------------------------------------------------------
// Tuple functionals (d = 3).

/// |det(a, b, c)| |<w, x>|.
inline double s_term(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& w, const Vec3& x) noexcept {
  return std::abs(det3(a, b, c)) * std::abs(dot(w, x));
}

/// |det(a × b, c × w, x)|.
inline double t_term(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& w, const Vec3& x) noexcept {
  return std::abs(det3(cross(a, b), cross(c, w), x));
}

using Quadruple = std::array<Vec3, 4>;

namespace detail {

template <class Term>
double symmetrized(const Quadruple& v, const Vec3& x, Term term) {
  std::array<int, 4> p{0, 1, 2, 3};
  double sum = 0.0;
  do {
    sum += term(v[p[0]], v[p[1]], v[p[2]], v[p[3]], x);
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

}  // namespace detail

/// Sum of s_term over the 24 orderings of the quadruple.
inline double S_sym(const Quadruple& v, const Vec3& x) { return detail::symmetrized(v, x, s_term); }

/// Sum of t_term over the 24 orderings of the quadruple.
inline double T_sym(const Quadruple& v, const Vec3& x) { return detail::symmetrized(v, x, t_term); }

/// T_sym / S_sym, or nullopt when S_sym vanishes (then T_sym vanishes too).
inline std::optional<double> ts_ratio(const Quadruple& v, const Vec3& x) {
  const double s = S_sym(v, x);
  double scale = norm(x);
  for (const auto& y : v) scale *= norm(y);
  if (!(s > 1e-13 * scale)) return std::nullopt;
  return T_sym(v, x) / s;
}

// ---------------------------------------------------------------------------
// Mixed and polar volumes.

/// V(K, L, L) = (1/3) ∫ h_K dS_L, with S_L read off the facets of L.
inline double mixed_volume(const Body& k, const Body& l) {
  require_solid(l, "mixed_volume");
  double v = 0.0;
  for (const auto& atom : surface_measure(l)) v += support(k, atom.normal) * atom.area;
  return v / 3.0;
}

/// V(B°) = (1/3) ∫_{S^2} h_B^{-3} by equal-weight quadrature on a Fibonacci grid.
inline double polar_volume(const Body& b, std::size_t grid_points = 100000) {
  const auto grid = fibonacci_sphere(grid_points);
  double sum = 0.0;
  for (const auto& u : grid.points) {
    const double h = support(b, u);
    if (!(h > 0.0)) throw InputError("polar_volume: origin is not an interior point");
    sum += 1.0 / (h * h * h);
  }
  return 4.0 * std::numbers::pi / static_cast<double>(grid.points.size()) * sum / 3.0;
}

// ---------------------------------------------------------------------------
// The ratio h_{Π²K}(x) / (h_K(x) V(K)).

inline constexpr double kBallRatio = 3.0 * std::numbers::pi * std::numbers::pi / 4.0;

/// Generators of ΠK for a polytope or zonotope (antipodal atoms merged).
inline GeneratorSet projection_generators(const Body& b) {
  return std::visit(overloaded{[](const GeneratorSet& z) { return merge_parallel(projection_body(z)); },
                               [](const Polytope& p) { return polytope_projection_body(p, true); },
                               [](const auto&) -> GeneratorSet {
                                 throw InputError("projection body generators need a polytope or zonotope");
                               }},
                    b);
}

/// Precomputed Π²K generators so that many directions can be evaluated cheaply.
class RatioEvaluator {
 public:
  explicit RatioEvaluator(Body body) : body_(std::move(body)) {
    require_solid(body_, "ratio");
    volume_ = volume(body_);
    if (std::holds_alternative<GeneratorSet>(body_) || std::holds_alternative<Polytope>(body_)) {
      first_ = projection_generators(body_);
      second_ = projection_body(first_);
      if (second_.gens.size() <= 4000) second_ = merge_parallel(second_);
    }
  }

  double operator()(const Vec3& x) const {
    if (std::holds_alternative<Ball>(body_)) return kBallRatio;
    if (const auto* r = std::get_if<RevolutionBody>(&body_)) {
      if (norm(cross(x, Vec3{0, 0, 1})) > 1e-9 * norm(x))
        throw InputError("ratio: revolution bodies are evaluated along their axis only");
      return axis_ratio(*r);
    }
    return z_support(second_, x) / (support(body_, x) * volume_);
  }

  const Body& body() const noexcept { return body_; }
  double body_volume() const noexcept { return volume_; }
  const GeneratorSet& first_projection() const noexcept { return first_; }
  const GeneratorSet& second_projection() const noexcept { return second_; }

 private:
  Body body_;
  double volume_ = 0.0;
  GeneratorSet first_;
  GeneratorSet second_;
};

/// h_{Π²B}(x) / (h_B(x) V(B)) for unit x.
inline double ratio(const Body& b, const Vec3& x) {
  if (const auto* z = std::get_if<GeneratorSet>(&b)) {
    const double h = z_support(*z, x);
    if (!(h > 0.0)) throw InputError("ratio: support vanishes in this direction");
    return second_proj_support(*z, x) / (h * z_volume(*z));
  }
  if (const auto* p = std::get_if<Polytope>(&b)) {
    require_solid(b, "ratio");
    const auto first = polytope_projection_body(*p);
    return z_shadow_area(first, x) / (support(*p, x) * volume(*p));
  }
  return RatioEvaluator(b)(x);
}

// ---------------------------------------------------------------------------
// P(K) and the slice functional Q.

/// P(K) = V(ΠK) / V(K)^2.
inline double petty_value(const Body& b) {
  if (std::holds_alternative<Ball>(b)) return kBallRatio;
  if (std::holds_alternative<RevolutionBody>(b))
    throw InputError("P is available for zonotopes, polytopes and the ball only");
  require_solid(b, "petty_value");
  const double v = volume(b);
  return z_volume(projection_generators(b)) / (v * v);
}

/// ∫ sqrt(V_2(K ∩ (s x + x^⊥))) ds. The area is quadratic on each piece; its root can
/// have a square-root endpoint singularity, so pieces use tanh-sinh quadrature.
inline double sqrt_slice_integral(const Polytope& p, const Vec3& x, double tol = 1e-9) {
  const auto pieces = slice_pieces(p, x);
  double total = 0.0;
  const double piece_tol = tol / static_cast<double>(std::max<std::size_t>(1, pieces.size()));
  for (const auto& piece : pieces) {
    auto f = [&](double s) { return std::sqrt(piece.area_at(s)); };
    total += tanh_sinh(f, piece.lo, piece.hi, piece_tol);
  }
  return total;
}

/// 4 (∫ sqrt(slice area) ds)^2 / (w V), w the half-width along x (h_K(x) for symmetric K).
inline double q_direction(const Polytope& p, const Vec3& x, double vol) {
  const double width = support(p, x) + support(p, -x);
  const double integral = sqrt_slice_integral(p, x);
  return 4.0 * integral * integral / (0.5 * width * vol);
}

inline double q_direction(const Polytope& p, const Vec3& x) { return q_direction(p, x, volume(p)); }

// ---------------------------------------------------------------------------
// Invariant report.

struct InvariantOptions {
  bool want_P = true;
  bool want_M = true;
  bool want_m = true;
  bool want_Q = true;
  std::size_t grid = 2048;
  int refine = 50;
  std::size_t q_grid = 0;  ///< directions for Q (0: same as grid)
};

struct DirectionalValue {
  double value = 0.0;
  Vec3 direction;
};

struct InvariantReport {
  std::optional<double> P;
  std::optional<DirectionalValue> M;
  std::optional<DirectionalValue> m;
  std::optional<DirectionalValue> Q;
  std::size_t grid = 0;
  int refine = 0;
  int refinement_iterations = 0;
  bool m_at_cone_bound = false;  ///< m within 1e-6 of 6: candidate equality case
};

namespace detail {

inline void push_unit(std::vector<Vec3>& out, const Vec3& v) {
  const double n = norm(v);
  if (n > 0.0) out.push_back(v / n);
}

/// Directions where the piecewise-linear numerator or denominator has kinks that
/// are likely to carry extrema: facet normals, generator directions, and pairwise
/// crossings of the Π²K normal fan.
inline std::vector<Vec3> structural_directions(const RatioEvaluator& ev) {
  std::vector<Vec3> out;
  if (const auto* p = std::get_if<Polytope>(&ev.body())) {
    for (const auto& f : facet_data(*p)) out.push_back(f.normal);
    for (const auto& v : p->vertices) push_unit(out, v);
  } else if (const auto* z = std::get_if<GeneratorSet>(&ev.body())) {
    for (const auto& g : z->gens) push_unit(out, g);
  }
  for (const auto& g : ev.first_projection().gens) push_unit(out, g);
  const auto& second = ev.second_projection().gens;
  if (second.size() <= 400)
    for (std::size_t a = 0; a < second.size(); ++a)
      for (std::size_t b = a + 1; b < second.size(); ++b) push_unit(out, cross(second[a], second[b]));
  return out;
}

inline std::vector<Vec3> with_grid(std::vector<Vec3> dirs, std::size_t grid) {
  const auto g = fibonacci_sphere(grid);
  dirs.insert(dirs.begin(), g.points.begin(), g.points.end());
  return dirs;
}

inline double chart_step(std::size_t grid) { return std::sqrt(4.0 * std::numbers::pi / static_cast<double>(grid)); }

}  // namespace detail

/// Structural seeds (facet normals, vertex directions) are skipped above this count;
/// on fine meshes they are dense enough that the grid already covers them.
inline constexpr std::size_t kMaxQSeeds = 600;

/// Q(P) = max_x q_direction(P, x), extremized like M and m.
inline DirectionalValue q_invariant(const Polytope& p, std::size_t grid, int refine) {
  std::vector<Vec3> dirs;
  if (p.facets.size() + p.vertices.size() <= kMaxQSeeds) {
    for (const auto& f : facet_data(p)) dirs.push_back(f.normal);
    for (const auto& v : p.vertices) detail::push_unit(dirs, v);
  }
  dirs = detail::with_grid(std::move(dirs), grid);
  const double vol = volume(p);
  const auto e = extremize_on_sphere([&](const Vec3& x) { return q_direction(p, x, vol); }, dirs, true, refine,
                                     detail::chart_step(grid));
  return {e.value, e.direction};
}

inline InvariantReport invariants(const Body& b, const InvariantOptions& opt = {}) {
  require_solid(b, "invariants");
  InvariantReport rep;
  rep.grid = opt.grid;
  rep.refine = opt.refine;
  if ((opt.want_M || opt.want_m) && !is_symmetric(b))
    throw SymmetryError("invariants: M and m require a centrally symmetric body");
  if (std::holds_alternative<RevolutionBody>(b))
    throw InputError("invariants: revolution bodies support the axis ratio only");

  if (opt.want_P) rep.P = petty_value(b);

  if (std::holds_alternative<Ball>(b)) {
    const DirectionalValue c{kBallRatio, {0, 0, 1}};
    if (opt.want_M) rep.M = c;
    if (opt.want_m) rep.m = c;
    if (opt.want_Q) rep.Q = c;
    return rep;
  }

  if (opt.want_M || opt.want_m) {
    const RatioEvaluator ev(b);
    const auto dirs = detail::with_grid(detail::structural_directions(ev), opt.grid);
    const double step = detail::chart_step(opt.grid);
    if (opt.want_M) {
      const auto e = extremize_on_sphere(ev, dirs, true, opt.refine, step);
      rep.M = DirectionalValue{e.value, e.direction};
      rep.refinement_iterations = std::max(rep.refinement_iterations, e.refinement_iterations);
    }
    if (opt.want_m) {
      const auto e = extremize_on_sphere(ev, dirs, false, opt.refine, step);
      rep.m = DirectionalValue{e.value, e.direction};
      rep.refinement_iterations = std::max(rep.refinement_iterations, e.refinement_iterations);
      rep.m_at_cone_bound = e.value < 6.0 + 1e-6;
    }
  }
  if (opt.want_Q) {
    const std::size_t qg = opt.q_grid ? opt.q_grid : opt.grid;
    if (const auto* p = std::get_if<Polytope>(&b))
      rep.Q = q_invariant(*p, qg, opt.refine);
    else
      rep.Q = q_invariant(zonotope_polytope(std::get<GeneratorSet>(b)), qg, opt.refine);
  }
  return rep;
}

/// Image of a polytope or zonotope under a linear map.
inline Body transformed(const Body& b, const Mat3& t) {
  return std::visit(overloaded{[&](const GeneratorSet& z) -> Body { return transformed(z, t); },
                               [&](const Polytope& p) -> Body { return transformed(p, t); },
                               [](const auto&) -> Body { throw InputError("transformed: polytope or zonotope expected"); }},
                    b);
}

/// max(|M(TB) - M(B)| / M(B), |m(TB) - m(B)| / m(B)) for unimodular T.
inline double sl_invariance_check(const Body& b, const Mat3& t, std::size_t grid = 2048, int refine = 50) {
  if (std::abs(t.det() - 1.0) > 1e-9) throw InputError("sl_invariance_check: det(T) must be 1");
  InvariantOptions opt;
  opt.want_P = opt.want_Q = false;
  opt.grid = grid;
  opt.refine = refine;
  const auto before = invariants(b, opt);
  const auto after = invariants(transformed(b, t), opt);
  return std::max(std::abs(after.M->value - before.M->value) / before.M->value,
                  std::abs(after.m->value - before.m->value) / before.m->value);
}

}  // namespace pettylab
