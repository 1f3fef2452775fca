#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "pettylab/anneal.hpp"
#include "pettylab/body.hpp"
#include "pettylab/error.hpp"
#include "pettylab/fixtures.hpp"
#include "pettylab/functionals.hpp"
#include "pettylab/parallel.hpp"
#include "pettylab/random_bodies.hpp"
#include "pettylab/symmetrize.hpp"

namespace pettylab {

enum class Objective { MaxMZonoid, MinMSymmetric, MinQSymmetric, MaxTsRatio };

inline const char* objective_name(Objective o) {
  switch (o) {
    case Objective::MaxMZonoid: return "max-M-zonoid";
    case Objective::MinMSymmetric: return "min-m-symmetric";
    case Objective::MinQSymmetric: return "min-Q-symmetric";
    case Objective::MaxTsRatio: return "max-ts-ratio";
  }
  return "?";
}

inline Objective parse_objective(const std::string& s) {
  for (auto o : {Objective::MaxMZonoid, Objective::MinMSymmetric, Objective::MinQSymmetric, Objective::MaxTsRatio})
    if (s == objective_name(o)) return o;
  throw InputError("unknown objective '" + s + "'");
}

inline bool minimizes(Objective o) { return o == Objective::MinMSymmetric || o == Objective::MinQSymmetric; }

/// Sharp constant the objective is bounded by, if any.
inline std::optional<double> sharp_constant(Objective o) {
  switch (o) {
    case Objective::MaxMZonoid: return 8.0;
    case Objective::MinMSymmetric: return 6.0;
    case Objective::MaxTsRatio: return 4.0 / 3.0;
    case Objective::MinQSymmetric: return std::nullopt;
  }
  return std::nullopt;
}

inline constexpr int kMaxZonotopeGenerators = 8;
inline constexpr int kMaxVertexPairs = 20;

struct SearchConfig {
  Objective objective = Objective::MaxMZonoid;
  int n = 5;  ///< generators, vertex pairs, or ignored (max-ts-ratio uses 4 vectors)
  int restarts = 4;
  int iters = 2000;
  std::uint64_t seed = 1;
  std::string start = "random";  ///< random | cube | icosphere (min-Q-symmetric only)
  unsigned threads = 1;
};

/// A search configuration: points (generators, half vertex set, or the 4-tuple) and a
/// direction (unused by min-Q-symmetric, which maximizes over directions itself).
struct Configuration {
  std::vector<Vec3> points;
  Vec3 direction{0, 0, 1};
};

struct SearchRun {
  SearchConfig config;
  double best_value = 0.0;
  Configuration best;
  int best_restart = 0;
  std::vector<double> restart_best;
  std::vector<TracePoint> trace;
  int accepted = 0;
  int rejected_degenerate = 0;
  // Diagnostics for near-equality configurations.
  bool near_sharp_constant = false;
  int parallel_pairs = -1;              ///< max-M-zonoid: generator pairs within 1e-2 rad of parallel
  double profile_linearity = -1.0;      ///< min-m-symmetric: cone residual of the Schwartz symmetral
  bool soundness_violation = false;     ///< value beyond a proven bound
};

namespace detail {

/// Q during the search: grid plus structural seeds, no refinement. Cheap and
/// deterministic; the reported best is re-evaluated with the same rule.
inline constexpr std::size_t kSearchQGrid = 256;

inline std::optional<Polytope> normalized_hull(const std::vector<Vec3>& half) {
  try {
    Polytope p = symmetric_hull(half);
    const double v = volume(p);
    if (!(v > 1e-9 * std::pow(std::max(1.0, max_abs_coordinate(p.vertices)), 3))) return std::nullopt;
    return scaled(p, std::cbrt(1.0 / v));
  } catch (const FlatBodyError&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Normalizes a configuration in place (volume 1 bodies, unit vectors). False when degenerate.
inline bool normalize(Objective o, Configuration& c) {
  const double dn = norm(c.direction);
  if (!(dn > 1e-12)) return false;
  c.direction = c.direction / dn;
  switch (o) {
    case Objective::MaxMZonoid: {
      GeneratorSet z{c.points};
      if (is_flat(z, 1e-9)) return false;
      const double s = std::cbrt(1.0 / z_volume(z));
      for (auto& g : c.points) g *= s;
      return true;
    }
    case Objective::MinMSymmetric:
    case Objective::MinQSymmetric: {
      const auto p = detail::normalized_hull(c.points);
      if (!p) return false;
      const double s = std::cbrt(1.0 / volume(symmetric_hull(c.points)));
      for (auto& v : c.points) v *= s;
      return true;
    }
    case Objective::MaxTsRatio:
      for (auto& v : c.points) {
        const double n = norm(v);
        if (!(n > 1e-12)) return false;
        v = v / n;
      }
      return true;
  }
  return false;
}

/// Objective value in its natural sign; nullopt for degenerate configurations.
inline std::optional<double> evaluate(Objective o, const Configuration& c) {
  const Vec3 x = normalized(c.direction);
  switch (o) {
    case Objective::MaxMZonoid: {
      const GeneratorSet z{c.points};
      if (is_flat(z, 1e-9)) return std::nullopt;
      const double h = z_support(z, x);
      if (!(h > 0.0)) return std::nullopt;
      return second_proj_support(z, x) / (h * z_volume(z));
    }
    case Objective::MinMSymmetric: {
      const auto p = detail::normalized_hull(c.points);
      if (!p) return std::nullopt;
      return ratio(Body{*p}, x);
    }
    case Objective::MinQSymmetric: {
      const auto p = detail::normalized_hull(c.points);
      if (!p) return std::nullopt;
      return q_invariant(*p, detail::kSearchQGrid, 0).value;
    }
    case Objective::MaxTsRatio: {
      if (c.points.size() != 4) throw InputError("max-ts-ratio: configuration needs 4 vectors");
      return ts_ratio({c.points[0], c.points[1], c.points[2], c.points[3]}, x);
    }
  }
  return std::nullopt;
}

inline void check_budget(const SearchConfig& cfg) {
  if (cfg.restarts < 1) throw InputError("search: restarts must be >= 1");
  if (cfg.iters < 1) throw InputError("search: iters must be >= 1");
  switch (cfg.objective) {
    case Objective::MaxMZonoid:
      if (cfg.n < 3 || cfg.n > kMaxZonotopeGenerators)
        throw InputError("search: max-M-zonoid needs 3..8 generators");
      break;
    case Objective::MinMSymmetric:
    case Objective::MinQSymmetric:
      if (cfg.start == "random" && (cfg.n < 3 || cfg.n > kMaxVertexPairs))
        throw InputError("search: symmetric polytopes need 3..20 vertex pairs");
      break;
    case Objective::MaxTsRatio: break;
  }
  if (cfg.start != "random" && cfg.start != "cube" && cfg.start != "icosphere")
    throw InputError("search: start must be random, cube or icosphere");
  if (cfg.start != "random" && cfg.objective != Objective::MinQSymmetric)
    throw InputError("search: --start applies to min-Q-symmetric only");
}

/// Half vertex set {v : <v, t> > 0} of a symmetric fixture, for a generic t.
inline std::vector<Vec3> half_vertices(const Polytope& p) {
  const Vec3 t{0.5773, 0.3311, 0.7457};
  std::vector<Vec3> out;
  for (const auto& v : p.vertices)
    if (dot(v, t) > 0.0) out.push_back(v);
  return out;
}

inline Configuration initial_configuration(const SearchConfig& cfg, Rng& rng) {
  Configuration c;
  c.direction = random_unit(rng);
  if (cfg.start == "cube") {
    c.points = half_vertices(fixtures::cube());
    return c;
  }
  if (cfg.start == "icosphere") {
    c.points = half_vertices(fixtures::icosphere(1));
    return c;
  }
  const int count = cfg.objective == Objective::MaxTsRatio ? 4 : cfg.n;
  for (int i = 0; i < count; ++i) c.points.push_back(gaussian_vec(rng));
  return c;
}

inline Configuration propose(const Configuration& c, double step, Rng& rng) {
  Configuration y = c;
  for (auto& v : y.points) v += step * gaussian_vec(rng);
  y.direction += step * gaussian_vec(rng);
  return y;
}

inline int parallel_pair_count(const std::vector<Vec3>& gens, double angle_tol = 1e-2) {
  int count = 0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (norm(cross(gens[i], gens[j])) <= angle_tol * norm(gens[i]) * norm(gens[j])) ++count;
  return count;
}

inline void fill_diagnostics(SearchRun& run) {
  const auto o = run.config.objective;
  if (const auto c = sharp_constant(o)) {
    run.near_sharp_constant = std::abs(run.best_value - *c) <= 1e-3;
    if (o == Objective::MaxMZonoid) run.soundness_violation = run.best_value > 8.0 + 1e-9;
    if (o == Objective::MinMSymmetric) run.soundness_violation = run.best_value < 6.0 - 1e-9;
    if (o == Objective::MaxTsRatio) run.soundness_violation = run.best_value > 4.0 / 3.0 + 1e-12;
  }
  if (o == Objective::MaxMZonoid) run.parallel_pairs = parallel_pair_count(run.best.points);
  if (o == Objective::MinMSymmetric) {
    if (const auto p = detail::normalized_hull(run.best.points)) {
      const auto r = schwartz(*p, run.best.direction);
      run.profile_linearity = cone_profile_residual(r.profile, r.a);
    }
  }
}

/// Simulated annealing over configurations; restarts are independent streams seeded with
/// seed_seq{seed, restart}, merged by best value with ties going to the lower restart.
inline SearchRun optimize(const SearchConfig& cfg) {
  check_budget(cfg);
  const double sign = minimizes(cfg.objective) ? -1.0 : 1.0;
  struct Slot {
    AnnealOutcome<Configuration> out;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(cfg.restarts));
  parallel_for(slots.size(), cfg.threads, [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffU), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    Rng rng(seq);
    Configuration init = initial_configuration(cfg, rng);
    for (int attempt = 0; !normalize(cfg.objective, init) || !evaluate(cfg.objective, init); ++attempt) {
      if (attempt > 100) throw Error("search: could not draw a feasible start");
      init = initial_configuration(cfg, rng);
    }
    auto eval = [&](const Configuration& c) -> std::optional<double> {
      const auto v = evaluate(cfg.objective, c);
      if (!v) return std::nullopt;
      return sign * *v;
    };
    auto prop = [&](const Configuration& c, double step, Rng& g) {
      Configuration y = propose(c, step, g);
      if (!normalize(cfg.objective, y)) y.points.clear();
      return y;
    };
    auto guarded = [&](const Configuration& c) -> std::optional<double> {
      if (c.points.empty()) return std::nullopt;
      return eval(c);
    };
    AnnealOptions opt;
    opt.iters = cfg.iters;
    slots[r].out = anneal(init, guarded, prop, opt, rng);
  });

  SearchRun run;
  run.config = cfg;
  for (std::size_t r = 0; r < slots.size(); ++r) {
    auto& o = slots[r].out;
    const double v = sign * o.best_value;
    run.restart_best.push_back(v);
    run.accepted += o.accepted;
    run.rejected_degenerate += o.rejected_degenerate;
    for (auto t : o.trace) {
      t.restart = static_cast<int>(r);
      t.value *= sign;
      t.best *= sign;
      run.trace.push_back(t);
    }
    if (r == 0 || sign * v > sign * run.best_value) {
      run.best_value = v;
      run.best = o.best;
      run.best_restart = static_cast<int>(r);
    }
  }
  fill_diagnostics(run);
  return run;
}

/// Search for small Q among symmetric polytopes; `start` is random, cube or icosphere.
inline SearchRun min_Q_search(int n, int restarts, int iters, std::uint64_t seed, const std::string& start = "random",
                              unsigned threads = 1) {
  SearchConfig cfg;
  cfg.objective = Objective::MinQSymmetric;
  cfg.n = n;
  cfg.restarts = restarts;
  cfg.iters = iters;
  cfg.seed = seed;
  cfg.start = start;
  cfg.threads = threads;
  return optimize(cfg);
}

// ---------------------------------------------------------------------------
// JSON form.

inline nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

inline Vec3 json_vec(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw InputError(where + ": expected [x, y, z]");
  for (const auto& e : j)
    if (!e.is_number()) throw InputError(where + ": coordinates must be numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline nlohmann::json trace_json(const TracePoint& t) {
  return {{"restart", t.restart}, {"iteration", t.iteration}, {"value", t.value}, {"best", t.best},
          {"temperature", t.temperature}};
}

inline nlohmann::json to_json(const SearchRun& run) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : run.best.points) pts.push_back(vec_json(p));
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : run.trace) trace.push_back(trace_json(t));
  nlohmann::json j{{"objective", objective_name(run.config.objective)},
                   {"seed", run.config.seed},
                   {"n", run.config.n},
                   {"restarts", run.config.restarts},
                   {"iterations", run.config.iters},
                   {"start", run.config.start},
                   {"best_value", run.best_value},
                   {"best_restart", run.best_restart},
                   {"restart_best", run.restart_best},
                   {"best_configuration", {{"points", pts}, {"direction", vec_json(run.best.direction)}}},
                   {"accepted", run.accepted},
                   {"rejected_degenerate", run.rejected_degenerate},
                   {"near_sharp_constant", run.near_sharp_constant},
                   {"soundness_violation", run.soundness_violation},
                   {"trace", trace}};
  if (run.parallel_pairs >= 0) j["parallel_pairs"] = run.parallel_pairs;
  if (run.profile_linearity >= 0.0) j["profile_linearity"] = run.profile_linearity;
  return j;
}

/// Parses a SearchRun and re-evaluates the best configuration; a mismatch beyond 1e-9
/// relative is rejected.
inline SearchRun search_run_from_json(const nlohmann::json& j) {
  try {
    SearchRun run;
    run.config.objective = parse_objective(j.at("objective").get<std::string>());
    run.config.seed = j.at("seed").get<std::uint64_t>();
    run.config.n = j.at("n").get<int>();
    run.config.restarts = j.at("restarts").get<int>();
    run.config.iters = j.at("iterations").get<int>();
    run.config.start = j.value("start", std::string("random"));
    run.best_value = j.at("best_value").get<double>();
    run.best_restart = j.value("best_restart", 0);
    run.restart_best = j.value("restart_best", std::vector<double>{});
    const auto& cfg = j.at("best_configuration");
    for (std::size_t i = 0; i < cfg.at("points").size(); ++i)
      run.best.points.push_back(json_vec(cfg.at("points")[i], "best_configuration.points[" + std::to_string(i) + "]"));
    run.best.direction = json_vec(cfg.at("direction"), "best_configuration.direction");
    run.accepted = j.value("accepted", 0);
    run.rejected_degenerate = j.value("rejected_degenerate", 0);
    for (const auto& t : j.value("trace", nlohmann::json::array()))
      run.trace.push_back({t.at("restart").get<int>(), t.at("iteration").get<int>(), t.at("value").get<double>(),
                           t.at("best").get<double>(), t.at("temperature").get<double>()});
    const auto v = evaluate(run.config.objective, run.best);
    if (!v) throw InputError("search run: best configuration is degenerate");
    if (std::abs(*v - run.best_value) > 1e-9 * std::max(1.0, std::abs(*v)))
      throw InputError("search run: stored best value does not match its configuration");
    fill_diagnostics(run);
    return run;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("search run: ") + e.what());
  }
}

}  // namespace pettylab
