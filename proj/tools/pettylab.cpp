// pettylab: invariants, verification suites, searches and symmetrization from the command line.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pettylab/body.hpp"
#include "pettylab/error.hpp"
#include "pettylab/fixtures.hpp"
#include "pettylab/functionals.hpp"
#include "pettylab/io.hpp"
#include "pettylab/random_bodies.hpp"
#include "pettylab/report.hpp"
#include "pettylab/search.hpp"
#include "pettylab/suites.hpp"
#include "pettylab/symmetrize.hpp"

using namespace pettylab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBody = 3;
constexpr int kExitSuite = 4;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("PETTYLAB_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw InputError(std::string("PETTYLAB_SEED: not an unsigned integer: '") + s + "'");
    }
  }
  return 42;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

Vec3 parse_direction(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw InputError("direction: expected x,y,z, got '" + s + "'");
  Vec3 v;
  try {
    v = {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
  } catch (const std::exception&) {
    throw InputError("direction: expected three numbers, got '" + s + "'");
  }
  if (!(norm(v) > 0.0) || !is_finite(v)) throw InputError("direction: must be a nonzero finite vector");
  return normalized(v);
}

/// A body argument is a file path or @name for a bundled fixture.
Body read_body(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return fixtures::by_name(arg.substr(1));
  return load_body(arg);
}

void emit(const Report& rep, const std::string& format, bool timestamp) {
  std::cout << (format == "json" ? to_json_report(rep, timestamp) : to_csv(rep, timestamp));
}

// ---------------------------------------------------------------------------

struct ComputeArgs {
  std::string body;
  std::string invariants = "P,M,m,Q";
  std::size_t grid = 2048;
  int refine = 50;
  std::string format = "csv";
  bool no_timestamp = false;
  unsigned threads = 1;
};

Report compute_report(const Body& b, const ComputeArgs& a) {
  Report rep;
  if (const auto* r = std::get_if<RevolutionBody>(&b)) {
    // Revolution bodies carry only the axis ratio and its cone bound.
    rep.add({"volume", rev_volume(*r), std::nullopt, std::nullopt, Status::Info, ""});
    rep.add({"axis_ratio", axis_ratio(*r), Vec3{0, 0, 1}, std::nullopt, Status::Info, ""});
    rep.add({"cone_bound", cone_bound(r->d), std::nullopt, std::nullopt, Status::Info,
             "d=" + std::to_string(r->d)});
    return rep;
  }
  InvariantOptions opt;
  opt.want_P = opt.want_M = opt.want_m = opt.want_Q = false;
  for (const auto& name : split(a.invariants, ',')) {
    if (name == "P")
      opt.want_P = true;
    else if (name == "M")
      opt.want_M = true;
    else if (name == "m")
      opt.want_m = true;
    else if (name == "Q")
      opt.want_Q = true;
    else
      throw InputError("--invariants: unknown invariant '" + name + "' (expected P, M, m, Q)");
  }
  if (a.grid < 16) throw InputError("--grid: need at least 16 directions");
  if (a.refine < 0) throw InputError("--refine: must be nonnegative");
  opt.grid = a.grid;
  opt.refine = a.refine;
  const auto inv = invariants(b, opt);
  if (inv.P) rep.add({"P", *inv.P, std::nullopt, std::nullopt, Status::Info, ""});
  if (inv.M) rep.add({"M", inv.M->value, inv.M->direction, std::nullopt, Status::Info, ""});
  if (inv.m)
    rep.add({"m", inv.m->value, inv.m->direction, std::nullopt, Status::Info,
             inv.m_at_cone_bound ? "m within 1e-6 of 6: equality candidate" : ""});
  if (inv.Q) rep.add({"Q", inv.Q->value, inv.Q->direction, std::nullopt, Status::Info, ""});
  return rep;
}

int cmd_compute(const ComputeArgs& a) {
  if (a.format != "csv" && a.format != "json") throw InputError("--format: expected csv or json");
  const Body b = read_body(a.body);
  emit(compute_report(b, a), a.format, !a.no_timestamp);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string format = "csv";
  bool no_timestamp = false;
};

int cmd_verify(const VerifyArgs& a) {
  if (a.format != "csv" && a.format != "json") throw InputError("--format: expected csv or json");
  SuiteOptions o;
  o.samples = a.samples;
  o.seed = a.seed ? *a.seed : default_seed();
  o.threads = std::max(1U, a.threads);
  const Report rep = run_suite(a.suite, o);
  emit(rep, a.format, !a.no_timestamp);
  return rep.passed() ? kExitOk : kExitSuite;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
  std::string objective;
  int n = 5;
  int restarts = 4;
  int iters = 2000;
  std::optional<std::uint64_t> seed;
  std::string start = "random";
  std::string out;
  unsigned threads = 1;
};

std::string summary_line(const SearchRun& run) {
  std::string s = std::string(objective_name(run.config.objective)) + ": best " + fmt12(run.best_value) +
                  " (restart " + std::to_string(run.best_restart) + ")";
  if (const auto c = sharp_constant(run.config.objective)) s += ", sharp constant " + fmt12(*c);
  if (run.parallel_pairs > 0)
    s += ", generator parallelism detected (" + std::to_string(run.parallel_pairs) + " pairs)";
  if (run.profile_linearity >= 0.0) s += ", Schwartz profile cone residual " + fmt12(run.profile_linearity);
  if (run.near_sharp_constant) s += ", near the sharp constant";
  if (run.soundness_violation) s += ", SOUNDNESS VIOLATION";
  return s;
}

int cmd_search(const SearchArgs& a) {
  SearchConfig cfg;
  cfg.objective = parse_objective(a.objective);
  cfg.n = a.n;
  cfg.restarts = a.restarts;
  cfg.iters = a.iters;
  cfg.seed = a.seed ? *a.seed : default_seed();
  cfg.start = a.start;
  cfg.threads = std::max(1U, a.threads);
  const SearchRun run = optimize(cfg);
  if (!a.out.empty()) {
    std::ofstream trace(a.out);
    if (!trace) throw InputError("cannot write '" + a.out + "'");
    for (const auto& t : run.trace) trace << trace_json(t).dump() << "\n";
    std::string companion = a.out;
    const auto dot = companion.rfind(".jsonl");
    companion = dot != std::string::npos && dot + 6 == companion.size() ? companion.substr(0, dot) + ".json"
                                                                         : companion + ".json";
    std::ofstream full(companion);
    if (!full) throw InputError("cannot write '" + companion + "'");
    full << to_json(run).dump(2) << "\n";
  }
  std::cout << summary_line(run) << "\n";
  std::cout << "accepted " << run.accepted << ", rejected degenerate " << run.rejected_degenerate << "\n";
  return run.soundness_violation ? kExitSuite : kExitOk;
}

// ---------------------------------------------------------------------------

struct SymmetrizeArgs {
  std::string body;
  std::string direction = "0,0,1";
  std::string mode = "steiner";
  int steps = 1;
  std::string track_ratio;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t max_vertices = 200;
};

int cmd_symmetrize(const SymmetrizeArgs& a) {
  if (a.mode != "steiner" && a.mode != "schwartz") throw InputError("--mode: expected steiner or schwartz");
  if (a.steps < 1) throw InputError("--steps: must be >= 1");
  const Body b = read_body(a.body);
  Polytope p;
  if (const auto* q = std::get_if<Polytope>(&b))
    p = *q;
  else if (const auto* z = std::get_if<GeneratorSet>(&b))
    p = zonotope_polytope(*z);
  else
    throw InputError("symmetrize: polytope or zonotope body expected");
  const Vec3 nu = parse_direction(a.direction);
  std::printf("volume before %s\n", fmt12(volume(p)).c_str());

  Body result;
  if (a.mode == "schwartz") {
    if (a.steps != 1) throw InputError("--steps: only one Schwartz step is defined");
    const RevolutionBody r = schwartz(p, nu);
    std::printf("volume after %s\n", fmt12(rev_volume(r)).c_str());
    if (!a.track_ratio.empty()) {
      const Vec3 x = parse_direction(a.track_ratio);
      const auto m = schwartz_ratio_monotonicity(p, x);
      std::printf("ratio before %s\nratio after %s\n", fmt12(m.before).c_str(), fmt12(m.after).c_str());
    }
    result = r;
  } else if (a.steps == 1) {
    const Polytope s = steiner(p, nu);
    std::printf("volume after %s\n", fmt12(volume(s)).c_str());
    result = s;
  } else {
    // Random directions from the seed; the trace shows the shape rounding out.
    Rng rng(a.seed ? *a.seed : default_seed());
    std::vector<Vec3> dirs{nu};
    for (int i = 1; i < a.steps; ++i) dirs.push_back(random_unit(rng));
    std::vector<double> trace;
    const Polytope s = steiner_iterate(p, dirs, a.max_vertices, &trace);
    std::printf("volume after %s\n", fmt12(volume(s)).c_str());
    for (std::size_t i = 0; i < trace.size(); ++i) std::printf("roundness %zu %s\n", i, fmt12(trace[i]).c_str());
    result = s;
  }
  if (!a.out.empty()) save_body(result, a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-body invariants, verification suites and extremal searches"};
  app.require_subcommand(1);

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Compute P, M, m, Q of a body file (or @fixture)");
  compute->add_option("body", ca.body, "Body file, or @name for a bundled fixture")->required();
  compute->add_option("--invariants", ca.invariants, "Comma-separated subset of P,M,m,Q");
  compute->add_option("--grid", ca.grid, "Seed grid size on the sphere");
  compute->add_option("--refine", ca.refine, "Local refinement iterations");
  compute->add_option("--format", ca.format, "csv or json");
  compute->add_flag("--no-timestamp", ca.no_timestamp, "Omit the timestamp header");
  compute->add_option("--threads", ca.threads, "Worker cap (invariant computation is single-threaded)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", va.suite, "Suite name")->required();
  verify->add_option("--samples", va.samples, "Sample count (0: suite default)");
  verify->add_option("--seed", va.seed, "Seed (default: PETTYLAB_SEED or 42)");
  verify->add_option("--threads", va.threads, "Worker cap");
  verify->add_option("--format", va.format, "csv or json");
  verify->add_flag("--no-timestamp", va.no_timestamp, "Omit the timestamp header");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Simulated-annealing search for extremal configurations");
  search->add_option("objective", sa.objective, "max-M-zonoid | min-m-symmetric | min-Q-symmetric | max-ts-ratio")
      ->required();
  search->add_option("--n", sa.n, "Generators or vertex pairs");
  search->add_option("--restarts", sa.restarts, "Independent restarts");
  search->add_option("--iters", sa.iters, "Iterations per restart");
  search->add_option("--seed", sa.seed, "Seed (default: PETTYLAB_SEED or 42)");
  search->add_option("--start", sa.start, "random | cube | icosphere (min-Q-symmetric)");
  search->add_option("--out", sa.out, "JSONL trace; the full run goes to the .json companion");
  search->add_option("--threads", sa.threads, "Worker cap");

  SymmetrizeArgs ya;
  auto* sym = app.add_subcommand("symmetrize", "Steiner or Schwartz symmetrization");
  sym->add_option("body", ya.body, "Body file, or @name for a bundled fixture")->required();
  sym->add_option("--direction", ya.direction, "Direction x,y,z");
  sym->add_option("--mode", ya.mode, "steiner or schwartz");
  sym->add_option("--steps", ya.steps, "Steiner steps; after the first, directions are random");
  sym->add_option("--track-ratio", ya.track_ratio, "Print the ratio pair at direction x,y,z (schwartz)");
  sym->add_option("--out", ya.out, "Output body file");
  sym->add_option("--seed", ya.seed, "Seed for random directions");
  sym->add_option("--max-vertices", ya.max_vertices, "Vertex cap for iterated Steiner");

  std::string fixture_name, fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Write a bundled fixture body file");
  fixture->add_option("name", fixture_name, "Fixture name")->required();
  fixture->add_option("--out", fixture_out, "Output path (default: stdout)");

  app.add_subcommand("list", "List suites and fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(ca);
    if (verify->parsed()) return cmd_verify(va);
    if (search->parsed()) return cmd_search(sa);
    if (sym->parsed()) return cmd_symmetrize(ya);
    if (fixture->parsed()) {
      const Body b = fixtures::by_name(fixture_name);
      if (fixture_out.empty())
        std::cout << body_to_json(b).dump(2) << "\n";
      else
        save_body(b, fixture_out);
      return kExitOk;
    }
    std::cout << "suites:";
    for (const auto& s : suites()) std::cout << " " << s.name;
    std::cout << "\nfixtures:";
    for (const auto& n : fixtures::names()) std::cout << " " << n;
    std::cout << "\n";
    return kExitOk;
  } catch (const FlatBodyError& e) {
    std::cerr << "invalid body: " << e.what() << "\n";
    return kExitBody;
  } catch (const SymmetryError& e) {
    std::cerr << "invalid body: " << e.what() << "\n";
    return kExitBody;
  } catch (const InvalidBodyError& e) {
    std::cerr << "invalid body: " << e.what() << "\n";
    return kExitBody;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
