#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pettylab/body.hpp"
#include "pettylab/fixtures.hpp"
#include "pettylab/functionals.hpp"
#include "pettylab/parallel.hpp"
#include "pettylab/random_bodies.hpp"
#include "pettylab/report.hpp"
#include "pettylab/revolution.hpp"
#include "pettylab/symmetrize.hpp"
#include "pettylab/zonotope.hpp"

namespace pettylab {

struct SuiteOptions {
  std::size_t samples = 0;  ///< 0: the suite default
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

namespace suite_detail {

/// Independent generator for sample i of a given stream, so results do not depend on
/// the worker count or on the order samples are drawn.
inline Rng sample_rng(std::uint64_t seed, std::uint32_t stream, std::size_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU), static_cast<std::uint32_t>(seed >> 32), stream,
                    static_cast<std::uint32_t>(i)};
  return Rng(seq);
}

template <class F>
auto map_samples(std::size_t n, unsigned threads, const F& f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(n);
  parallel_for(n, threads, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

struct Extreme {
  double value;
  std::size_t index;
};

inline Extreme arg_max(const std::vector<double>& v) {
  Extreme e{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > e.value) e = {v[i], i};
  return e;
}

inline Extreme arg_min(const std::vector<double>& v) {
  Extreme e{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < e.value) e = {v[i], i};
  return e;
}

inline std::string witness(const SuiteOptions& o, std::uint32_t stream, std::size_t i) {
  return "seed=" + std::to_string(o.seed) + " stream=" + std::to_string(stream) + " sample=" + std::to_string(i);
}

/// PASS/FAIL row; FAIL rows name the inequality and the witness.
inline ReportRow check(const std::string& name, double value, double tol, bool ok, const std::string& inequality,
                       const std::string& wit) {
  ReportRow r{name, value, std::nullopt, tol, ok ? Status::Pass : Status::Fail, ""};
  if (!ok) r.detail = "violates " + inequality + " at " + wit;
  return r;
}

inline ReportRow info(const std::string& name, double value, const std::string& detail = "") {
  return {name, value, std::nullopt, std::nullopt, Status::Info, detail};
}

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

/// Random symmetric hull or general hull, alternating by sample index.
inline Polytope mixed_polytope(Rng& rng, std::size_t i) {
  if (i % 2 == 0) return random_symmetric_hull(rng, 3, 12);
  std::uniform_int_distribution<int> n(4, 20);
  return random_polytope(rng, n(rng));
}

/// h_{Π²K}(u) · ... helpers over the projection-body generators.
inline double mixed_volume_gens(const GeneratorSet& k, const GeneratorSet& l) {
  return mixed_volume(Body{k}, Body{l});
}

/// Unimodular matrix with entries drawn around the identity, sign-corrected.
inline Mat3 random_unimodular(Rng& rng) {
  std::normal_distribution<double> g(0.0, 0.6);
  for (;;) {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.m[i][j] = (i == j ? 1.0 : 0.0) + g(rng);
    const double d = t.det();
    if (std::abs(d) < 0.2) continue;
    if (d < 0)
      for (int i = 0; i < 3; ++i) t.m[i][0] = -t.m[i][0];
    const double s = std::cbrt(1.0 / std::abs(d));
    for (auto& row : t.m)
      for (auto& e : row) e *= s;
    return t;
  }
}

inline double twod_hull_shadow(const GeneratorSet& z, const Vec3& x) {
  const auto [u, w] = orthonormal_complement(x);
  std::vector<Vec2> pts;
  const std::size_t n = z.gens.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Vec3 p{};
    for (std::size_t i = 0; i < n; ++i) p += (mask >> i & 1U) ? z.gens[i] : -z.gens[i];
    pts.push_back({dot(p, u), dot(p, w)});
  }
  const auto hull = convex_hull_2d(pts);
  return polygon_area(hull);
}

}  // namespace suite_detail

// ---------------------------------------------------------------------------

inline Report suite_ts_ratio(const SuiteOptions& o) {
  using namespace suite_detail;
  Report rep;
  const std::size_t n = o.samples;
  const auto ratios = map_samples(n, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 1, i);
    const Quadruple q{gaussian_vec(rng), gaussian_vec(rng), gaussian_vec(rng), gaussian_vec(rng)};
    return ts_ratio(q, gaussian_vec(rng)).value_or(0.0);
  });
  const auto mx = arg_max(ratios);
  rep.add(check("T/S max over random 4-tuples", mx.value, 1e-12, mx.value <= 4.0 / 3.0 + 1e-12, "T <= (4/3) S",
                witness(o, 1, mx.index)));
  std::size_t exact = 0;
  for (double r : ratios) exact += std::abs(r - 4.0 / 3.0) <= 1e-12;
  rep.add(info("T/S fraction of tuples at 4/3", static_cast<double>(exact) / std::max<std::size_t>(n, 1)));

  const std::size_t np = std::min<std::size_t>(n, 10000);
  const auto par = map_samples(np, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 2, i);
    std::normal_distribution<double> g;
    // Well-conditioned tuples only: a nearly flat (a, b, c) or x nearly orthogonal to c
    // leaves T/S with fewer than 12 correct digits.
    for (;;) {
      const Vec3 a = gaussian_vec(rng), b = gaussian_vec(rng), c = gaussian_vec(rng), x = gaussian_vec(rng);
      if (std::abs(det3(a, b, c)) < 1e-2 * norm(a) * norm(b) * norm(c)) continue;
      if (std::abs(dot(x, c)) < 1e-2 * norm(x) * norm(c)) continue;
      const Quadruple q{a, b, c, g(rng) * c};
      return std::abs(ts_ratio(q, x).value_or(0.0) - 4.0 / 3.0);
    }
  });
  const auto pe = arg_max(par);
  rep.add(check("T/S deviation from 4/3 on parallel-pair tuples", pe.value, 1e-12, pe.value <= 1e-12,
                "T = (4/3) S for a parallel pair", witness(o, 2, pe.index)));

  const auto ident = map_samples(np, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 3, i);
    const Vec3 a = gaussian_vec(rng), b = gaussian_vec(rng), c = gaussian_vec(rng), x = gaussian_vec(rng);
    const double lhs = std::abs(det3(cross(a, c), cross(b, c), x));
    const double rhs = std::abs(det3(a, b, c)) * std::abs(dot(x, c));
    return std::abs(lhs - rhs) / (norm(a) * norm(b) * norm(c) * norm(c) * norm(x));
  });
  const auto ie = arg_max(ident);
  rep.add(check("|det(a x c, b x c, x)| = |det(a,b,c)| |<x,c>| relative error", ie.value, 1e-12, ie.value <= 1e-12,
                "the wedge identity", witness(o, 3, ie.index)));
  return rep;
}

inline Report suite_formula_coherence(const SuiteOptions& o) {
  using namespace suite_detail;
  struct Gaps {
    double shadow, second, hull, bridge;
  };
  const auto gaps = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 10, i);
    const auto z = random_zonotope(rng, 3, 8);
    const Vec3 x = random_unit(rng);
    const auto pz = projection_body(z);
    Gaps g{};
    g.shadow = rel_gap(z_shadow_area(z, x), z_support(pz, x));
    g.second = rel_gap(second_proj_support(z, x), z_shadow_area(pz, x));
    g.hull = rel_gap(z_shadow_area(z, x), twod_hull_shadow(z, x));
    double s = 0.0, t = 0.0;
    for (const auto& a : z.gens)
      for (const auto& b : z.gens)
        for (const auto& c : z.gens)
          for (const auto& w : z.gens) {
            s += s_term(a, b, c, w, x);
            t += t_term(a, b, c, w, x);
          }
    g.bridge = rel_gap(ratio(Body{z}, x), 6.0 * t / s);
    return g;
  });
  auto col = [&](double Gaps::*m) {
    std::vector<double> v;
    for (const auto& g : gaps) v.push_back(g.*m);
    return arg_max(v);
  };
  Report rep;
  const auto a = col(&Gaps::shadow), b = col(&Gaps::second), c = col(&Gaps::hull), d = col(&Gaps::bridge);
  rep.add(check("shadow area vs support of the projection body", a.value, 1e-12, a.value <= 1e-12,
                "V2(Z|x^perp) = h_{PiZ}(x)", witness(o, 10, a.index)));
  rep.add(check("direct tuple sum vs composed second projection", b.value, 1e-9, b.value <= 1e-9,
                "h_{Pi^2 Z}(x) tuple formula = V2(PiZ|x^perp)", witness(o, 10, b.index)));
  rep.add(check("shadow area vs planar hull of projected vertices", c.value, 1e-12, c.value <= 1e-12,
                "shadow formula = zonogon area", witness(o, 10, c.index)));
  rep.add(check("ratio vs 6 sum T / sum S over all index tuples", d.value, 1e-9, d.value <= 1e-9,
                "ratio = 6 T/S", witness(o, 10, d.index)));
  return rep;
}

inline Report suite_fubini(const SuiteOptions& o) {
  using namespace suite_detail;
  Report rep;
  {
    const auto k = projection_generators(Body{fixtures::cube()});
    const auto l = projection_generators(Body{fixtures::tetrahedron()});
    const double lhs = mixed_volume_gens(l, k);
    const double rhs = mixed_volume(Body{projection_body(k)}, Body{fixtures::tetrahedron()});
    rep.add(check("V(PiL,PiK) for cube K, tetrahedron L", lhs, 1e-9, std::abs(lhs - 64.0) <= 1e-9 * 64.0,
                  "V(PiL,PiK) = 64", "cube/tetrahedron fixture"));
    rep.add(check("V(Pi^2K,L) for cube K, tetrahedron L", rhs, 1e-9, std::abs(rhs - 64.0) <= 1e-9 * 64.0,
                  "V(Pi^2K,L) = 64", "cube/tetrahedron fixture"));
  }
  const auto gaps = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 20, i);
    const Polytope k = mixed_polytope(rng, i);
    const Polytope l = mixed_polytope(rng, i + 1);
    const auto pk = projection_generators(Body{k});
    const auto pl = projection_generators(Body{l});
    return rel_gap(mixed_volume_gens(pl, pk), mixed_volume(Body{projection_body(pk)}, Body{l}));
  });
  const auto g = arg_max(gaps);
  rep.add(check("max relative gap V(PiL,PiK) vs V(Pi^2K,L)", g.value, 1e-9, g.value <= 1e-9,
                "V(PiL,PiK) = V(Pi^2K,L)", witness(o, 20, g.index)));
  return rep;
}

inline Report suite_minkowski(const SuiteOptions& o) {
  using namespace suite_detail;
  struct R {
    double slack, self;
  };
  const auto res = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 30, i);
    Body k = i % 3 == 0 ? Body{random_zonotope(rng, 3, 6)} : Body{mixed_polytope(rng, i)};
    Body l = i % 3 == 1 ? Body{random_zonotope(rng, 3, 6)} : Body{mixed_polytope(rng, i + 1)};
    const double vkl = mixed_volume(k, l);
    const double bound = std::cbrt(volume(k)) * std::pow(volume(l), 2.0 / 3.0);
    return R{vkl / bound - 1.0, rel_gap(mixed_volume(l, l), volume(l))};
  });
  std::vector<double> slack, self;
  for (const auto& r : res) slack.push_back(r.slack), self.push_back(r.self);
  const auto s = arg_min(slack), e = arg_max(self);
  Report rep;
  rep.add(check("min V(K,L) / (V(K)^(1/3) V(L)^(2/3)) - 1", s.value, 1e-12, s.value >= -1e-12,
                "V(K,L) >= V(K)^(1/3) V(L)^(2/3)", witness(o, 30, s.index)));
  rep.add(check("max relative gap V(L,L) vs V(L)", e.value, 1e-9, e.value <= 1e-9, "V(L,L) = V(L)",
                witness(o, 30, e.index)));
  return rep;
}

inline Report suite_steiner_monotone(const SuiteOptions& o) {
  using namespace suite_detail;
  struct R {
    double excess, vol, refl;
  };
  const auto res = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 40, i);
    const Polytope p = mixed_polytope(rng, i);
    const Vec3 nu = random_unit(rng);
    const Vec3 hn = plane_normal(nu, random_unit(rng));
    const auto m = steiner_projection_monotonicity(p, nu, hn);
    const Polytope s = steiner(p, nu);
    return R{(m.after - m.before) / std::max(1.0, m.before), rel_gap(volume(s), volume(p)), reflection_defect(s, nu)};
  });
  std::vector<double> ex, vol, refl;
  for (const auto& r : res) ex.push_back(r.excess), vol.push_back(r.vol), refl.push_back(r.refl);
  const auto a = arg_max(ex), b = arg_max(vol), c = arg_max(refl);
  Report rep;
  rep.add(check("max V2(Pi(S P)|H) - V2(Pi P|H), relative", a.value, 1e-9, a.value <= 1e-9,
                "V2(Pi(S_nu K)|H) <= V2(Pi K|H)", witness(o, 40, a.index)));
  rep.add(check("max relative volume change under Steiner", b.value, 1e-9, b.value <= 1e-9, "V(S_nu P) = V(P)",
                witness(o, 40, b.index)));
  rep.add(check("max reflection defect of the symmetral", c.value, 1e-9, c.value <= 1e-9,
                "S_nu P symmetric in nu^perp", witness(o, 40, c.index)));

  // Idempotence on a few bodies: a second symmetrization changes nothing.
  const std::size_t ni = std::min<std::size_t>(o.samples, 20);
  const auto idem = map_samples(ni, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 41, i);
    const Polytope p = random_symmetric_hull(rng, 3, 8);
    const Vec3 nu = random_unit(rng);
    const Polytope s1 = steiner(p, nu), s2 = steiner(s1, nu);
    double gap = 0.0;
    for (const auto& u : fibonacci_sphere(256).points) gap = std::max(gap, std::abs(support(s1, u) - support(s2, u)));
    return gap / std::max(1.0, max_abs_coordinate(s1.vertices));
  });
  const auto d = arg_max(idem);
  rep.add(check("max support gap between S P and S S P", d.value, 1e-9, d.value <= 1e-9, "S_nu S_nu P = S_nu P",
                witness(o, 41, d.index)));

  // Rounding trend of iterated symmetrization.
  Rng rng = sample_rng(o.seed, 42, 0);
  Polytope p = random_symmetric_hull(rng, 8);
  std::vector<Vec3> dirs;
  for (int k = 0; k < 200; ++k) dirs.push_back(random_unit(rng));
  std::vector<double> trace;
  steiner_iterate(p, dirs, 200, &trace);
  const double tail = *std::min_element(trace.end() - 20, trace.end());
  rep.add(check("roundness after 200 Steiner steps (start " + fmt12(trace.front()) + ")", tail, 0.0,
                tail < trace.front(), "roundness decreasing", witness(o, 42, 0)));
  return rep;
}

inline Report suite_schwartz_monotone(const SuiteOptions& o) {
  using namespace suite_detail;
  Report rep;
  for (const auto& [name, p, expect] : {std::tuple{"octahedron", fixtures::octahedron(), 6.0},
                                        std::tuple{"cube", fixtures::cube(), 8.0}}) {
    const auto m = schwartz_ratio_monotonicity(p, {0, 0, 1});
    const bool ok = std::abs(m.before - expect) <= 1e-9 && std::abs(m.after - expect) <= 1e-4;
    rep.add(check(std::string("ratio pair for ") + name + " at e3 (after)", m.after, 1e-4, ok,
                  "ratio(T_x K, x) = ratio(K, x) = " + fmt12(expect), std::string(name) + " fixture"));
  }
  struct R {
    double excess, sampled;
  };
  const auto res = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 50, i);
    const Polytope p = random_symmetric_hull(rng, 3, 12);
    const auto m = schwartz_ratio_monotonicity(p, random_unit(rng));
    return R{m.after - m.before, rel_gap(m.after_sampled, m.after)};
  });
  std::vector<double> ex, sm;
  for (const auto& r : res) ex.push_back(r.excess), sm.push_back(r.sampled);
  const auto a = arg_max(ex), b = arg_max(sm);
  rep.add(check("max ratio(T_x P, x) - ratio(P, x)", a.value, 1e-6, a.value <= 1e-6, "ratio(T_x K, x) <= ratio(K, x)",
                witness(o, 50, a.index)));
  rep.add(info("max relative gap of the sampled profile ratio", b.value, witness(o, 50, b.index)));
  return rep;
}

inline Report suite_berwald(const SuiteOptions& o) {
  using namespace suite_detail;
  Report rep;
  const int dims[] = {3, 4, 5, 8, 16};
  struct R {
    double slack, axis_slack, residual;
    bool equality;
  };
  const auto res = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 60, i);
    const int d = dims[i % 5];
    const RevolutionBody r = random_profile(rng, d);
    const double p = d == 3 ? 1.0 : d - 2.0, q = d == 3 ? 2.0 : d - 1.0;
    const auto b = berwald_check(r.profile, r.a, p, q);
    return R{b.lhs / b.rhs - 1.0, axis_ratio(r) / cone_bound(d) - 1.0, b.cone_residual, b.equality};
  });
  std::vector<double> slack, axis;
  std::size_t mismatched = 0;
  double tight_nonlinear = std::numeric_limits<double>::infinity();
  for (const auto& r : res) {
    slack.push_back(r.slack);
    axis.push_back(r.axis_slack);
    // The equality flag (profile within 1e-10 of a cone) must agree with tightness.
    mismatched += r.equality != (std::abs(r.slack) <= 1e-12);
    if (!r.equality) tight_nonlinear = std::min(tight_nonlinear, r.slack);
  }
  const auto a = arg_min(slack), b = arg_min(axis);
  rep.add(check("min Berwald lhs/rhs - 1 on random concave profiles", a.value, 1e-12, a.value >= -1e-12,
                "Berwald lhs >= rhs", witness(o, 60, a.index)));
  rep.add(check("min axis_ratio / cone_bound - 1 on random profiles", b.value, 1e-9, b.value >= -1e-9,
                "axis ratio >= cone bound", witness(o, 60, b.index)));
  rep.add(check("profiles where equality flag and tightness disagree", static_cast<double>(mismatched), 0.0,
                mismatched == 0, "equality only for linear profiles", "seed=" + std::to_string(o.seed)));
  rep.add(info("smallest Berwald slack among nonlinear profiles", tight_nonlinear));

  const auto lin = map_samples(std::min<std::size_t>(o.samples, 100), o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 61, i);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    const auto r = double_cone(3, u(rng), u(rng));
    const auto bw = berwald_check(r.profile, r.a, 1.0, 2.0);
    return bw.equality && std::abs(bw.lhs / bw.rhs - 1.0) <= 1e-12 ? 0.0 : 1.0;
  });
  const auto l = arg_max(lin);
  rep.add(check("linear profiles failing the equality case", lin.empty() ? 0.0 : l.value, 1e-12,
                lin.empty() || l.value == 0.0, "Berwald equality for f(0)(1 - |s|/a)", witness(o, 61, l.index)));

  double worst = 0.0;
  int at = 3;
  for (int d = 3; d <= 16; ++d) {
    const double g = rel_gap(axis_ratio(double_cone(d)), cone_bound(d));
    if (g > worst) worst = g, at = d;
  }
  rep.add(check("max relative gap double-cone axis ratio vs cone bound, d=3..16", worst, 1e-12, worst <= 1e-12,
                "axis_ratio(double cone) = cone_bound(d)", "d=" + std::to_string(at)));
  const double cyl = axis_ratio(cylinder(3));
  rep.add(check("cylinder axis ratio, d=3", cyl, 1e-12, std::abs(cyl - 8.0) <= 1e-12 * 8.0, "axis ratio = 8",
                "cylinder fixture"));
  return rep;
}

inline Report suite_zhang_petty(const SuiteOptions& o) {
  using namespace suite_detail;
  const auto vals = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 70, i);
    const auto z = random_zonotope(rng, 3, 8);
    const auto pz = projection_body(z);
    const double v = z_volume(z);
    return polar_volume(Body{pz}) * v * v;
  });
  const auto lo = arg_min(vals), hi = arg_max(vals);
  Report rep;
  rep.add(check("min V((PiK)°) V(K)^2", lo.value, 0.01, lo.value >= 20.0 / 27.0 * 0.99,
                "V((PiK)°) V(K)^2 >= 20/27", witness(o, 70, lo.index)));
  rep.add(check("max V((PiK)°) V(K)^2", hi.value, 0.01, hi.value <= 64.0 / 27.0 * 1.01,
                "V((PiK)°) V(K)^2 <= 64/27", witness(o, 70, hi.index)));
  return rep;
}

inline Report suite_theorem_1_1(const SuiteOptions& o) {
  using namespace suite_detail;
  const auto grid = fibonacci_sphere(2048);
  const auto maxima = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 80, i);
    const RatioEvaluator ev(Body{random_zonotope(rng, 3, 8)});
    double m = 0.0;
    for (const auto& x : grid.points) m = std::max(m, ev(x));
    return m;
  });
  const auto mx = arg_max(maxima);
  Report rep;
  rep.add(check("max ratio over random zonotopes and grid directions", mx.value, 1e-9, mx.value <= 8.0 * (1.0 + 1e-9),
                "M(K) <= 8", witness(o, 80, mx.index)));
  InvariantOptions io;
  io.want_P = io.want_m = io.want_Q = false;
  const auto cube = invariants(Body{fixtures::cube()}, io);
  rep.add(check("M(cube)", cube.M->value, 1e-9, std::abs(cube.M->value - 8.0) <= 1e-9, "M(cube) = 8", "cube fixture"));
  return rep;
}

inline Report suite_theorem_1_2(const SuiteOptions& o) {
  using namespace suite_detail;
  InvariantOptions io;
  io.want_P = io.want_M = io.want_Q = false;
  io.grid = 1024;
  io.refine = 30;
  const auto minima = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 90, i);
    return invariants(Body{random_symmetric_hull(rng, 3, 12)}, io).m->value;
  });
  const auto mn = arg_min(minima);
  Report rep;
  rep.add(check("min ratio over random symmetric hulls", mn.value, 1e-9, mn.value >= 6.0 * (1.0 - 1e-9), "m(K) >= 6",
                witness(o, 90, mn.index)));
  const double oct = ratio(Body{fixtures::octahedron()}, {0, 0, 1});
  auto row = check("ratio(octahedron, e3)", oct, 1e-6, std::abs(oct - 6.0) <= 1e-6, "ratio = 6", "octahedron fixture");
  row.direction = Vec3{0, 0, 1};
  row.detail = "equality case flagged: the octahedron is not a circular double cone";
  rep.add(row);
  return rep;
}

inline Report suite_sl_invariance(const SuiteOptions& o) {
  using namespace suite_detail;
  Report rep;
  const Mat3 shear{{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}};
  const Mat3 diag{{{{2, 0, 0}, {0, 0.5, 0}, {0, 0, 1}}}};
  const double a = sl_invariance_check(Body{fixtures::cube()}, shear);
  const double b = sl_invariance_check(Body{fixtures::cube()}, Mat3::identity());
  const double c = sl_invariance_check(Body{fixtures::octahedron()}, diag);
  rep.add(check("cube under a shear", a, 1e-4, a < 1e-4, "M, m invariant under SL(3)", "cube fixture"));
  rep.add(check("cube under the identity", b, 0.0, b == 0.0, "identity changes nothing", "cube fixture"));
  rep.add(check("octahedron under diag(2, 1/2, 1)", c, 1e-4, c < 1e-4, "M, m invariant under SL(3)",
                "octahedron fixture"));
  const auto dev = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 100, i);
    const Body k = i % 2 == 0 ? Body{random_symmetric_hull(rng, 3, 8)} : Body{random_zonotope(rng, 3, 6)};
    return sl_invariance_check(k, random_unimodular(rng));
  });
  const auto mx = arg_max(dev);
  rep.add(check("max relative change of M, m under random unimodular maps", mx.value, 1e-4, mx.value < 1e-4,
                "M, m invariant under SL(3)", witness(o, 100, mx.index)));
  return rep;
}

inline Report suite_class_reduction(const SuiteOptions& o) {
  using namespace suite_detail;
  struct R {
    double p, ppi, prop23, minP;
  };
  const auto res = map_samples(o.samples, o.threads, [&](std::size_t i) {
    Rng rng = sample_rng(o.seed, 110, i);
    const Body k = i % 2 == 0 ? Body{random_zonotope(rng, 3, 6)} : Body{mixed_polytope(rng, i / 2)};
    const GeneratorSet pk = projection_generators(k);
    R r{};
    r.p = petty_value(k);
    r.ppi = petty_value(Body{pk});
    // V(PiL, PiK) <= 8 V(K) V(K, L) for a zonotope K.
    const auto z = random_zonotope(rng, 3, 6);
    const Polytope l = mixed_polytope(rng, i + 1);
    const double lhs = mixed_volume(Body{projection_generators(Body{l})}, Body{projection_generators(Body{z})});
    r.prop23 = lhs / (8.0 * z_volume(z) * mixed_volume(Body{z}, Body{l})) - 1.0;
    r.minP = std::min(r.p, r.ppi);
    return r;
  });
  std::vector<double> gap, prop, minp;
  for (const auto& r : res) gap.push_back(r.ppi - r.p), prop.push_back(r.prop23), minp.push_back(r.minP);
  const auto a = arg_max(gap), b = arg_max(prop), c = arg_min(minp);
  Report rep;
  rep.add(check("max P(PiK) - P(K)", a.value, 1e-9, a.value <= 1e-9, "P(PiK) <= P(K)", witness(o, 110, a.index)));
  if (!res.empty())
    rep.add(info("P(K), P(PiK) at the extreme sample", res[a.index].p, "P(PiK)=" + fmt12(res[a.index].ppi)));
  rep.add(check("max V(PiL,PiK) / (8 V(K) V(K,L)) - 1 for zonotopes K", b.value, 1e-9, b.value <= 1e-9,
                "V(PiL,PiK) <= 8 V(K) V(K,L)", witness(o, 110, b.index)));
  rep.add(check("min P over K and PiK", c.value, 1e-6, c.value >= 6.0 - 1e-6, "P(K) >= 6", witness(o, 110, c.index)));
  return rep;
}

struct SuiteInfo {
  const char* name;
  std::size_t default_samples;
  Report (*run)(const SuiteOptions&);
};

inline const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> all{
      {"ts-ratio", 100000, suite_ts_ratio},
      {"formula-coherence", 200, suite_formula_coherence},
      {"fubini", 200, suite_fubini},
      {"minkowski", 200, suite_minkowski},
      {"steiner-monotone", 500, suite_steiner_monotone},
      {"schwartz-monotone", 200, suite_schwartz_monotone},
      {"berwald", 1000, suite_berwald},
      {"zhang-petty", 100, suite_zhang_petty},
      {"theorem-1-1", 10000, suite_theorem_1_1},
      {"theorem-1-2", 1000, suite_theorem_1_2},
      {"sl-invariance", 20, suite_sl_invariance},
      {"class-reduction", 100, suite_class_reduction},
  };
  return all;
}

inline Report run_suite(const std::string& name, SuiteOptions opt) {
  for (const auto& s : suites())
    if (name == s.name) {
      if (opt.samples == 0) opt.samples = s.default_samples;
      return s.run(opt);
    }
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace pettylab
