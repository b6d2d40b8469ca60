#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "heco/benchmarks.hpp"
#include "heco/stats.hpp"

using namespace heco;

namespace {

RunSummary feasible_run(double f) {
  RunSummary s;
  s.f = f;
  return s;
}

RunSummary infeasible_run(double f, double v, double mean_violation) {
  RunSummary s;
  s.f = f;
  s.v = v;
  s.mean_violation = mean_violation;
  return s;
}

ProblemStats cell(std::string alg, std::string prob, double mean, double median, double sr = 100,
                  double vbar = 0, double mean_vio = 0) {
  ProblemStats s;
  s.algorithm = std::move(alg);
  s.problem = std::move(prob);
  s.mean = mean;
  s.median = median;
  s.sr = sr;
  s.vbar = vbar;
  s.mean_vio = mean_vio;
  return s;
}

RunRecord record_with(std::optional<double> feasible_f) {
  RunRecord r;
  if (feasible_f) {
    EvaluatedPoint p;
    p.x = {0.0};
    p.f = *feasible_f;
    r.best_feasible = p;
    r.best_any = p;
  } else {
    r.best_any.x = {0.0};
    r.best_any.v = 0.3;
  }
  return r;
}

}  // namespace

TEST(AggregateStats, PlainSampleStatistics) {
  const std::vector<RunSummary> runs = {feasible_run(4), feasible_run(1), feasible_run(3),
                                        feasible_run(2)};
  const auto s = aggregate_stats(runs, "p", "a");
  EXPECT_EQ(s.best, 1.0);
  EXPECT_EQ(s.median, 2.0);
  EXPECT_EQ(s.worst, 4.0);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.std, std::sqrt(5.0 / 3.0));
  EXPECT_EQ(s.sr, 100.0);
  EXPECT_EQ(s.mean_vio, 0.0);
}

TEST(AggregateStats, FeasibleRunIsBestRegardlessOfF) {
  const std::vector<RunSummary> runs = {infeasible_run(-100, 0.5, 0.5), feasible_run(1)};
  const auto s = aggregate_stats(runs);
  EXPECT_EQ(s.best, 1.0);
  EXPECT_EQ(s.worst, -100.0);
  EXPECT_EQ(s.sr, 50.0);
  EXPECT_EQ(s.median, 1.0);
  EXPECT_DOUBLE_EQ(s.mean_vio, 0.25);
}

TEST(AggregateStats, SingleRun) {
  const std::vector<RunSummary> runs = {feasible_run(7)};
  const auto s = aggregate_stats(runs);
  EXPECT_EQ(s.best, 7.0);
  EXPECT_EQ(s.median, 7.0);
  EXPECT_EQ(s.worst, 7.0);
  EXPECT_EQ(s.std, 0.0);
}

TEST(AggregateStats, EmptyInputIsAnError) {
  EXPECT_THROW(aggregate_stats(std::span<const RunSummary>{}), ConfigError);
}

TEST(AggregateStats, MedianRunCarriesViolationCounts) {
  auto bad = infeasible_run(0, 2.5, 2.5 / 3.0);
  bad.violated = {1, 1, 1};
  const std::vector<RunSummary> runs = {feasible_run(1), bad, bad};
  const auto s = aggregate_stats(runs);
  EXPECT_EQ(s.c, (std::array<int, 3>{1, 1, 1}));
  EXPECT_DOUBLE_EQ(s.vbar, 2.5 / 3.0);
  EXPECT_FALSE(s.median_feasible());
}

TEST(Summarize, ViolationBuckets) {
  EvaluatedPoint p;
  p.x = {0.0};
  p.ineq_violation = {2.0, 0.5, 0.005, 1e-6, 0.0};
  p.eq_violation = {0.01};
  p.v = 2.0 + 0.5 + 0.005 + 1e-6 + 0.01;
  const auto s = summarize(p);
  EXPECT_EQ(s.violated, (std::array<int, 3>{1, 2, 1}));
  EXPECT_DOUBLE_EQ(s.mean_violation, p.v / 6.0);
}

TEST(CecCompare, Totality) {
  const std::vector<RunSummary> runs = {feasible_run(1), feasible_run(1), feasible_run(-2),
                                        infeasible_run(0, 1, 0.5), infeasible_run(-9, 1, 0.5),
                                        infeasible_run(0, 0.2, 0.1)};
  for (const auto& a : runs)
    for (const auto& b : runs) EXPECT_EQ(cec_compare(a, b), -cec_compare(b, a));
  EXPECT_EQ(cec_compare(runs[3], runs[4]), 0);
  EXPECT_EQ(cec_compare(runs[5], runs[3]), -1);
  EXPECT_EQ(cec_compare(runs[2], runs[5]), -1);
}

TEST(Success, Cec2006Rule) {
  EXPECT_TRUE(cec2006_success(record_with(-5.50795), -5.5080132716));
  EXPECT_FALSE(cec2006_success(record_with(std::nullopt), -5.5080132716));
  EXPECT_TRUE(cec2006_success(record_with(-5.5080132716), -5.5080132716));
  EXPECT_FALSE(cec2006_success(record_with(-5.5079), -5.5080132716));
}

TEST(Rank, TiesAtPrecision) {
  const std::vector<ProblemStats> stats = {cell("A", "p", 1.0, 1.0), cell("B", "p", 1.0 + 5e-9, 1.0)};
  const auto t = rank_algorithms(stats);
  EXPECT_EQ(t.by_mean[0][0], 1);
  EXPECT_EQ(t.by_mean[1][0], 1);
  EXPECT_EQ(t.totals, (std::vector<int>{2, 2}));
}

TEST(Rank, SingleAlgorithm) {
  const std::vector<ProblemStats> stats = {cell("A", "p", 3, 3), cell("A", "q", 9, 1),
                                           cell("A", "r", -1, 0)};
  const auto t = rank_algorithms(stats);
  EXPECT_EQ(t.totals, (std::vector<int>{6}));
}

TEST(Rank, HandComputedTable) {
  // Problem p: means A 1, B 2, C 1      -> A 1, B 3, C 1
  //            medians A 5, B 4, C 6    -> A 2, B 1, C 3
  // Problem q: SR A 100, B 80, C 100; means A 10, C 9 -> A 2, B 3, C 1
  //            medians A feasible 3, B infeasible vbar 0.2, C infeasible vbar 0.1
  //                                      -> A 1, B 3, C 2
  // Totals: A 1+2+2+1 = 6, B 3+1+3+3 = 10, C 1+3+1+2 = 7
  const std::vector<ProblemStats> stats = {
      cell("A", "p", 1, 5),
      cell("B", "p", 2, 4),
      cell("C", "p", 1, 6),
      cell("A", "q", 10, 3),
      cell("B", "q", -50, -60, 80, 0.2, 0.05),
      cell("C", "q", 9, -70, 100, 0.1, 0.0),
  };
  const auto t = rank_algorithms(stats);
  ASSERT_EQ(t.algorithms, (std::vector<std::string>{"A", "B", "C"}));
  ASSERT_EQ(t.problems, (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(t.by_mean, (std::vector<std::vector<int>>{{1, 2}, {3, 3}, {1, 1}}));
  EXPECT_EQ(t.by_median, (std::vector<std::vector<int>>{{2, 1}, {1, 3}, {3, 2}}));
  EXPECT_EQ(t.totals, (std::vector<int>{6, 10, 7}));
  for (std::size_t a = 0; a < 3; ++a) {
    int sum = 0;
    for (std::size_t p = 0; p < 2; ++p) sum += t.by_mean[a][p] + t.by_median[a][p];
    EXPECT_EQ(sum, t.totals[a]);
  }
}

TEST(Rank, IdenticalStatsGiveEqualTotals) {
  const std::vector<ProblemStats> stats = {cell("A", "p", 1, 1), cell("B", "p", 1, 1),
                                           cell("C", "p", 1, 1)};
  EXPECT_EQ(rank_algorithms(stats).totals, (std::vector<int>{2, 2, 2}));
}

TEST(Rank, MissingOrDuplicateCells) {
  const std::vector<ProblemStats> missing = {cell("A", "p", 1, 1), cell("B", "q", 1, 1)};
  EXPECT_THROW(rank_algorithms(missing), ConfigError);
  const std::vector<ProblemStats> dup = {cell("A", "p", 1, 1), cell("A", "p", 2, 2)};
  EXPECT_THROW(rank_algorithms(dup), ConfigError);
}

TEST(ConvergenceRate, Examples) {
  const std::vector<double> one = {5.0};
  EXPECT_DOUBLE_EQ(convergence_rate_series(one, 10.0, 0.0)[0], 0.5);
  const std::vector<double> reached = {4.0, 0.0};
  EXPECT_EQ(convergence_rate_series(reached, 10.0, 0.0)[1], 1.0);
  const std::vector<double> worse = {20.0};
  EXPECT_LT(convergence_rate_series(worse, 10.0, 0.0)[0], 0.0);
  const std::vector<double> second = {5.0, 2.5};
  EXPECT_DOUBLE_EQ(convergence_rate_series(second, 10.0, 0.0)[1], 0.5);
  EXPECT_THROW(convergence_rate_series(one, 3.0, 3.0), ContractViolation);
}

TEST(Benchmarks, KnownSolutionsMatchOptima) {
  const auto registry = benchmarks::builtin_problems();
  for (const auto& name : registry.names()) {
    const auto& p = registry.at(name);
    ASSERT_TRUE(p.known_solution && p.known_optimum) << name;
    const auto e = evaluate(p, *p.known_solution);
    EXPECT_EQ(e.v, 0.0) << name;
    EXPECT_NEAR(e.f, *p.known_optimum, 1e-8) << name;
  }
}

TEST(Benchmarks, RegistryContents) {
  const auto registry = benchmarks::builtin_problems();
  const auto& g11 = registry.at("g11");
  EXPECT_EQ(g11.dim(), 2u);
  EXPECT_EQ(g11.equalities.size(), 1u);
  EXPECT_EQ(*registry.at("g24").known_optimum, -5.5080132716);
  EXPECT_EQ(*registry.at("g06").known_optimum, -6961.8138755802);
  EXPECT_EQ(*registry.at("g08").known_optimum, -0.0958250414);
  EXPECT_EQ(*registry.at("g11").known_optimum, 0.7499);
}
