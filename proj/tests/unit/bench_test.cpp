#include <gtest/gtest.h>

#include "invdec/bench.hpp"

using namespace invdec;

TEST(Bench, RejectsSmallSampleCounts) {
  try {
    (void)run_bench(BenchTask::Exp, BenchRegime::Generic, 50, RngSeed{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(Bench, RejectsUnknownMethod) {
  EXPECT_THROW((void)run_bench(BenchTask::Exp, BenchRegime::Generic, 100, RngSeed{1}, "pade"),
               Error);
  EXPECT_THROW(
      (void)run_bench(BenchTask::Factorize, BenchRegime::Generic, 100, RngSeed{1}, "reference"),
      Error);
}

TEST(Bench, ExpGenericAccuracy) {
  const BenchReport r = run_bench(BenchTask::Exp, BenchRegime::Generic, 1000, RngSeed{2});
  EXPECT_EQ(r.n_samples, 1000u);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_LE(r.max_rel_err, 1e-9);
  EXPECT_LE(r.p10_ns, r.median_ns);
  EXPECT_LE(r.median_ns, r.p90_ns);
}

TEST(Bench, AccuracyFieldsAreReproducible) {
  for (BenchTask t : kBenchTasks) {
    for (BenchRegime g : kBenchRegimes) {
      const BenchReport a = run_bench(t, g, 100, RngSeed{3});
      const BenchReport b = run_bench(t, g, 100, RngSeed{3});
      EXPECT_EQ(a.max_rel_err, b.max_rel_err);
      EXPECT_EQ(a.median_rel_err, b.median_rel_err);
      EXPECT_EQ(a.failures, b.failures);
      EXPECT_EQ(a.failure_codes, b.failure_codes);
    }
  }
}

TEST(Bench, BoundaryAndNearDegenerateComplete) {
  const BenchReport log = run_bench(BenchTask::Log, BenchRegime::Boundary, 200, RngSeed{4});
  EXPECT_EQ(log.n_samples, 200u);
  const BenchReport fac =
      run_bench(BenchTask::Factorize, BenchRegime::NearDegenerate, 200, RngSeed{4});
  EXPECT_EQ(fac.n_samples, 200u);
}

TEST(Bench, NamesRoundTrip) {
  for (BenchTask t : kBenchTasks) EXPECT_EQ(parse_task(to_string(t)), t);
  for (BenchRegime g : kBenchRegimes) EXPECT_EQ(parse_regime(to_string(g)), g);
  EXPECT_FALSE(parse_task("sqrt").has_value());
  EXPECT_FALSE(parse_regime("typical").has_value());
}

TEST(Bench, TableHasOneRowPerReport) {
  const auto reports = run_bench_methods(BenchTask::Log, BenchRegime::Generic, 100, RngSeed{5});
  ASSERT_EQ(reports.size(), 2u);
  const std::string table = format_table(reports);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 3);
  EXPECT_NE(table.find("reference"), std::string::npos);
}
