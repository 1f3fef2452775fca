#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pettylab/search.hpp"

using namespace pettylab;

namespace {

SearchConfig config(Objective o, int n, int restarts, int iters, std::uint64_t seed) {
  SearchConfig c;
  c.objective = o;
  c.n = n;
  c.restarts = restarts;
  c.iters = iters;
  c.seed = seed;
  return c;
}

bool same_trace(const SearchRun& a, const SearchRun& b) {
  if (a.trace.size() != b.trace.size()) return false;
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    const auto &s = a.trace[i], &t = b.trace[i];
    if (s.restart != t.restart || s.iteration != t.iteration || s.value != t.value || s.best != t.best ||
        s.temperature != t.temperature)
      return false;
  }
  return true;
}

}  // namespace

TEST(Objectives, Names) {
  for (const auto o : {Objective::MaxMZonoid, Objective::MinMSymmetric, Objective::MinQSymmetric, Objective::MaxTsRatio})
    EXPECT_EQ(parse_objective(objective_name(o)), o);
  EXPECT_THROW(parse_objective("max-P"), InputError);
  EXPECT_EQ(*sharp_constant(Objective::MaxMZonoid), 8.0);
  EXPECT_EQ(*sharp_constant(Objective::MinMSymmetric), 6.0);
}

TEST(Budget, Rejected) {
  EXPECT_THROW(optimize(config(Objective::MaxMZonoid, 9, 1, 10, 1)), InputError);
  EXPECT_THROW(optimize(config(Objective::MaxMZonoid, 2, 1, 10, 1)), InputError);
  EXPECT_THROW(optimize(config(Objective::MinMSymmetric, 21, 1, 10, 1)), InputError);
  EXPECT_THROW(optimize(config(Objective::MaxTsRatio, 4, 0, 10, 1)), InputError);
  EXPECT_THROW(optimize(config(Objective::MaxTsRatio, 4, 1, 0, 1)), InputError);
  auto c = config(Objective::MaxMZonoid, 5, 1, 10, 1);
  c.start = "cube";
  EXPECT_THROW(optimize(c), InputError);
}

TEST(Reproducibility, SameSeedSameTrace) {
  const auto c = config(Objective::MaxMZonoid, 5, 2, 200, 7);
  const auto a = optimize(c), b = optimize(c);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_TRUE(same_trace(a, b));
  const auto other = optimize(config(Objective::MaxMZonoid, 5, 2, 200, 8));
  EXPECT_FALSE(same_trace(a, other));
}

TEST(Reproducibility, IndependentOfThreadCount) {
  auto c = config(Objective::MinMSymmetric, 6, 3, 100, 11);
  const auto one = optimize(c);
  c.threads = 3;
  const auto three = optimize(c);
  EXPECT_EQ(one.best_value, three.best_value);
  EXPECT_EQ(one.best_restart, three.best_restart);
  EXPECT_TRUE(same_trace(one, three));
}

TEST(Soundness, BoundsRespected) {
  const auto m = optimize(config(Objective::MaxMZonoid, 5, 2, 500, 3));
  EXPECT_LE(m.best_value, 8.0 + 1e-9);
  EXPECT_FALSE(m.soundness_violation);
  const auto s = optimize(config(Objective::MinMSymmetric, 8, 2, 300, 3));
  EXPECT_GE(s.best_value, 6.0 - 1e-9);
  EXPECT_FALSE(s.soundness_violation);
  // Every recorded value stays within the proven bounds too.
  for (const auto& t : m.trace) EXPECT_LE(t.value, 8.0 + 1e-9);
  for (const auto& t : s.trace) EXPECT_GE(t.value, 6.0 - 1e-9);
}

TEST(Search, TsRatioApproachesSharpConstant) {
  const auto r = optimize(config(Objective::MaxTsRatio, 4, 2, 2000, 42));
  EXPECT_GE(r.best_value, 4.0 / 3.0 - 1e-6);
  EXPECT_LE(r.best_value, 4.0 / 3.0 + 1e-12);
}

TEST(Search, MaxMZonoid) {
  const auto r = optimize(config(Objective::MaxMZonoid, 5, 4, 3000, 42));
  EXPECT_GE(r.best_value, 8.0 - 1e-3);
  EXPECT_LE(r.best_value, 8.0 + 1e-9);
  EXPECT_TRUE(r.near_sharp_constant);
  EXPECT_GE(r.parallel_pairs, 0);
}

TEST(Search, BestMatchesConfiguration) {
  const auto r = optimize(config(Objective::MinMSymmetric, 5, 1, 100, 5));
  const auto v = evaluate(r.config.objective, r.best);
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, r.best_value);
  EXPECT_GE(r.profile_linearity, 0.0);
}

TEST(Search, MinQCubeStart) {
  const auto r = min_Q_search(4, 1, 60, 42, "cube");
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.front().iteration, 0);
  EXPECT_NEAR(r.trace.front().value, 8.0, 1e-9);
  EXPECT_LE(r.best_value, 8.0 + 1e-9);
  EXPECT_GE(r.best_value, 6.0 - 1e-6);
}

TEST(Search, MinQRandomStartFloor) {
  const auto r = min_Q_search(6, 1, 30, 42, "random");
  EXPECT_GE(r.best_value, 6.0 - 1e-6);
  for (const auto& t : r.trace) EXPECT_GE(t.value, 6.0 - 1e-6);
}

TEST(Json, RoundTripReevaluates) {
  const auto r = optimize(config(Objective::MaxMZonoid, 4, 2, 100, 9));
  const auto j = to_json(r);
  const auto back = search_run_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.best_value, r.best_value);
  EXPECT_EQ(back.trace.size(), r.trace.size());
  auto tampered = j;
  tampered["best_value"] = r.best_value + 0.5;
  EXPECT_THROW(search_run_from_json(tampered), InputError);
  auto broken = j;
  broken.erase("objective");
  EXPECT_THROW(search_run_from_json(broken), InputError);
}
