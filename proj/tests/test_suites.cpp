#include <gtest/gtest.h>

#include "pettylab/suites.hpp"

using namespace pettylab;

namespace {

std::size_t small_samples(const std::string& name) {
  if (name == "ts-ratio") return 2000;
  if (name == "theorem-1-1") return 200;
  if (name == "steiner-monotone") return 40;
  return 20;
}

std::string render(const Report& r) { return to_csv(r, false); }

}  // namespace

class SuiteTest : public testing::TestWithParam<std::string> {};

TEST_P(SuiteTest, PassesOnSmallSample) {
  SuiteOptions o;
  o.samples = small_samples(GetParam());
  o.seed = 42;
  const Report r = run_suite(GetParam(), o);
  EXPECT_FALSE(r.rows.empty());
  EXPECT_TRUE(r.passed()) << render(r);
}

INSTANTIATE_TEST_SUITE_P(All, SuiteTest,
                         testing::Values("ts-ratio", "formula-coherence", "fubini", "minkowski", "steiner-monotone",
                                         "schwartz-monotone", "berwald", "zhang-petty", "theorem-1-1", "theorem-1-2",
                                         "sl-invariance", "class-reduction"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& c : s)
                             if (c == '-') c = '_';
                           return s;
                         });

TEST(Suites, UnknownNameRejected) { EXPECT_THROW(run_suite("theorem-9", {}), InputError); }

TEST(Suites, OutputIndependentOfThreads) {
  for (const char* name : {"fubini", "theorem-1-2", "berwald"}) {
    SuiteOptions o;
    o.samples = 30;
    o.seed = 7;
    const auto one = render(run_suite(name, o));
    o.threads = 4;
    EXPECT_EQ(render(run_suite(name, o)), one) << name;
  }
}

TEST(Suites, SeedChangesSamples) {
  SuiteOptions a, b;
  a.samples = b.samples = 50;
  a.seed = 1;
  b.seed = 2;
  EXPECT_NE(render(run_suite("fubini", a)), render(run_suite("fubini", b)));
}

TEST(Suites, FailRowsCarryWitness) {
  const auto row = suite_detail::check("x", 2.0, 0.0, false, "x <= 1", suite_detail::witness({0, 5, 1}, 3, 17));
  EXPECT_EQ(row.status, Status::Fail);
  EXPECT_NE(row.detail.find("x <= 1"), std::string::npos);
  EXPECT_NE(row.detail.find("seed=5"), std::string::npos);
  EXPECT_NE(row.detail.find("sample=17"), std::string::npos);
}
