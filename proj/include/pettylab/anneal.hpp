#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace pettylab {

struct AnnealOptions {
  int iters = 2000;
  double t_start = 1e-2;  ///< initial temperature, relative to |f(x0)|
  double t_end = 1e-7;
  double step = 0.3;
  double target_accept = 0.3;
  int adapt_every = 25;
};

struct TracePoint {
  int restart = 0;
  int iteration = 0;
  double value = 0.0;
  double best = 0.0;
  double temperature = 0.0;
};

template <class Config>
struct AnnealOutcome {
  Config best;
  double best_value = 0.0;
  std::vector<TracePoint> trace;  ///< the start (iteration 0), then one entry per accepted step
  int accepted = 0;
  int rejected_degenerate = 0;
};

/// Simulated annealing that maximizes `eval` (nullopt marks an infeasible proposal).
/// Geometric cooling, Metropolis acceptance, and a step size nudged toward the target
/// acceptance rate. `propose(config, step, rng)` returns a candidate.
template <class Config, class Eval, class Propose, class Rng>
AnnealOutcome<Config> anneal(Config x, const Eval& eval, const Propose& propose, const AnnealOptions& opt, Rng& rng) {
  auto fx0 = eval(x);
  if (!fx0) return {x, -std::numeric_limits<double>::infinity(), {}, 0, 1};
  double fx = *fx0;
  const double scale = std::max(std::abs(fx), 1e-12);
  AnnealOutcome<Config> out{x, fx, {}, 0, 0};
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double step = opt.step;
  int window_acc = 0, window = 0;
  out.trace.push_back({0, 0, fx, fx, scale * opt.t_start});
  for (int it = 1; it <= opt.iters; ++it) {
    const double frac = opt.iters > 1 ? static_cast<double>(it - 1) / (opt.iters - 1) : 1.0;
    const double temp = scale * opt.t_start * std::pow(opt.t_end / opt.t_start, frac);
    Config y = propose(x, step, rng);
    const auto fy = eval(y);
    bool accept = false;
    if (!fy) {
      ++out.rejected_degenerate;
    } else {
      const double delta = *fy - fx;
      accept = delta >= 0.0 || uni(rng) < std::exp(delta / temp);
    }
    ++window;
    if (accept) {
      x = std::move(y);
      fx = *fy;
      ++out.accepted;
      ++window_acc;
      if (fx > out.best_value) {
        out.best_value = fx;
        out.best = x;
      }
      out.trace.push_back({0, it, fx, out.best_value, temp});
    }
    if (window == opt.adapt_every) {
      const double rate = static_cast<double>(window_acc) / window;
      step *= rate > opt.target_accept ? 1.25 : 0.8;
      step = std::clamp(step, 1e-7, 1.0);
      window = window_acc = 0;
    }
  }
  return out;
}

}  // namespace pettylab
