#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "heco/benchmarks.hpp"
#include "heco/heco_solver.hpp"

using namespace heco;

namespace {

RunConfig small_config(std::uint64_t seed = 1) {
  RunConfig cfg;
  cfg.fes_max = 4000;
  cfg.lambda = 20;
  cfg.gamma = 0.1;
  cfg.seed = seed;
  return cfg;
}

bool same_point(const EvaluatedPoint& a, const EvaluatedPoint& b) {
  return a.x == b.x && a.f == b.f && a.v == b.v;
}

}  // namespace

TEST(HecoDe, BudgetIsInitialPopulationPlusLambdaPerGeneration) {
  const auto p = benchmarks::g24();
  for (long fes : {450L, 451L, 1000L, 5003L}) {
    RunConfig cfg = small_config();
    cfg.fes_max = fes;
    cfg.n0 = 200;
    const auto r = run_heco_de(p, cfg);
    EXPECT_EQ(r.consumed_fes, 200 + r.generations * cfg.lambda);
    EXPECT_EQ(r.generations, (fes - 200) / cfg.lambda);
    EXPECT_LE(r.consumed_fes, cfg.fes_max);
  }
}

TEST(HecoDe, DefaultInitialPopulation) {
  RunConfig cfg;
  cfg.lambda = 20;
  EXPECT_EQ(resolved_n0(cfg, 1), 200);
  EXPECT_EQ(resolved_n0(cfg, 30), 360);
  EXPECT_EQ(resolved_n_final(cfg), 20);
  cfg.n0 = 450;
  EXPECT_EQ(resolved_n0(cfg, 1), 450);
}

TEST(HecoDe, DeterministicUnderSeed) {
  const auto p = benchmarks::g06();
  const auto a = run_heco_de(p, small_config(7));
  const auto b = run_heco_de(p, small_config(7));
  ASSERT_TRUE(a.best_feasible && b.best_feasible);
  EXPECT_TRUE(same_point(*a.best_feasible, *b.best_feasible));
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    EXPECT_EQ(a.trace[k].best_f, b.trace[k].best_f);
    EXPECT_EQ(a.trace[k].best_v, b.trace[k].best_v);
  }
  ASSERT_EQ(a.final_population.size(), b.final_population.size());
  for (std::size_t k = 0; k < a.final_population.size(); ++k)
    EXPECT_TRUE(same_point(a.final_population[k], b.final_population[k]));
  const auto c = run_heco_de(p, small_config(8));
  EXPECT_FALSE(same_point(a.best(), c.best()));
}

TEST(HecoDe, NoGenerationsKeepsBestOfInitialPopulation) {
  const auto p = benchmarks::example2();
  RunConfig cfg = small_config();
  cfg.n0 = 200;
  cfg.fes_max = 200;
  const auto r = run_heco_de(p, cfg);
  EXPECT_EQ(r.generations, 0);
  EXPECT_EQ(r.consumed_fes, 200);
  ASSERT_EQ(r.final_population.size(), 200u);
  ASSERT_EQ(r.trace.size(), 1u);
  std::optional<EvaluatedPoint> best;
  for (const auto& e : r.final_population)
    if (e.feasible() && (!best || e.f < best->f)) best = e;
  ASSERT_TRUE(best.has_value());
  ASSERT_TRUE(r.best_feasible.has_value());
  EXPECT_TRUE(same_point(*best, *r.best_feasible));
}

TEST(HecoDe, PopulationShrinksToFinalSize) {
  const auto p = benchmarks::g08();
  RunConfig cfg = small_config();
  cfg.n0 = 300;
  cfg.fes_max = 300 + 50 * 20;
  const auto r = run_heco_de(p, cfg);
  EXPECT_EQ(r.final_population.size(), 20u);
}

TEST(HecoDe, TraceIsMonotone) {
  const auto r = run_heco_de(benchmarks::g11(), small_config(3));
  ASSERT_EQ(r.trace.size(), static_cast<std::size_t>(r.generations + 1));
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    EXPECT_GT(r.trace[k].fes, r.trace[k - 1].fes);
    const auto& a = r.trace[k - 1];
    const auto& b = r.trace[k];
    EXPECT_TRUE(b.best_v < a.best_v || (b.best_v == a.best_v && b.best_f <= a.best_f));
  }
  EXPECT_EQ(r.trace.back().fes, r.consumed_fes);
}

TEST(HecoDe, SolvesExample2) {
  RunConfig cfg;
  cfg.fes_max = 20000;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.seed = seed;
    const auto r = run_heco_de(benchmarks::example2(), cfg);
    ASSERT_TRUE(r.best_feasible.has_value());
    EXPECT_LE(std::abs(r.best_feasible->x[0]), 1e-6);
  }
}

TEST(HecoDe, PopulationMembersStayInBounds) {
  const auto p = benchmarks::g24();
  const auto r = run_heco_de(p, small_config(5));
  for (const auto& e : r.final_population) EXPECT_TRUE(p.contains(e.x));
}

TEST(Variants, ParseAndDelegate) {
  EXPECT_EQ(parse_variant("HECO-DE"), Variant::HecoDe);
  EXPECT_EQ(parse_variant("HCO-DE"), Variant::HcoDe);
  EXPECT_EQ(parse_variant("HECO-DE-FR"), Variant::HecoDeFr);
  EXPECT_EQ(parse_variant("HECO-DE(FR)"), Variant::HecoDeFr);
  EXPECT_THROW(parse_variant("LSHADE"), ConfigError);
  EXPECT_EQ(to_string(Variant::HcoDe), "HCO-DE");

  const auto p = benchmarks::g06();
  const auto a = run_heco_de(p, small_config(2));
  const auto b = run_variant(p, small_config(2));
  EXPECT_TRUE(same_point(a.best(), b.best()));
}

TEST(Variants, EquivalentTermsDifferAndRunsComplete) {
  const auto p = benchmarks::example1();
  std::vector<double> best;
  for (Variant v : {Variant::HecoDe, Variant::HcoDe, Variant::HecoDeFr}) {
    RunConfig cfg = small_config(4);
    cfg.variant = v;
    const auto r = run_variant(p, cfg);
    EXPECT_EQ(r.consumed_fes, resolved_n0(cfg, 1) + r.generations * cfg.lambda);
    best.push_back(r.best().f);
  }
  EXPECT_EQ(equivalent_term(Variant::HcoDe), EquivalentTerm::Objective);
  EXPECT_EQ(equivalent_term(Variant::HecoDeFr), EquivalentTerm::FeasibilityRule);
  EXPECT_FALSE(best[0] == best[1] && best[1] == best[2]);
}

TEST(Variants, FeasibilityRuleOrdersFeasiblePopulationsByF) {
  std::vector<EvaluatedPoint> pop(4);
  const double fs[] = {3.0, -1.0, 2.5, 7.0};
  for (std::size_t k = 0; k < pop.size(); ++k) {
    pop[k].x = {0.0};
    pop[k].f = fs[k];
  }
  const auto fr = normalize_population(pop, EquivalentTerm::FeasibilityRule);
  const auto f = normalize_population(pop, EquivalentTerm::Objective);
  for (std::size_t k = 0; k < pop.size(); ++k) EXPECT_EQ(fr[k].e_tilde, f[k].e_tilde);
}

TEST(Config, Errors) {
  const auto p = benchmarks::g06();
  RunConfig cfg = small_config();
  cfg.lambda = 3;
  EXPECT_THROW(run_heco_de(p, cfg), ConfigError);
  cfg = small_config();
  cfg.n_final = 10;
  EXPECT_THROW(run_heco_de(p, cfg), ConfigError);
  cfg = small_config();
  cfg.n0 = 500;
  cfg.fes_max = 499;
  EXPECT_THROW(run_heco_de(p, cfg), ConfigError);
  cfg = small_config();
  cfg.n0 = 15;
  EXPECT_THROW(run_heco_de(p, cfg), ConfigError);
  cfg = small_config();
  cfg.gamma = -0.1;
  EXPECT_THROW(run_heco_de(p, cfg), ConfigError);
}

TEST(RunMany, MatchesSequentialRuns) {
  const auto p = benchmarks::g08();
  std::vector<RunTask> tasks;
  for (std::uint64_t s = 1; s <= 4; ++s) tasks.push_back({&p, small_config(s)});
  const auto parallel = run_many(tasks, 2);
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const auto seq = run_heco_de(p, tasks[k].config);
    EXPECT_TRUE(same_point(parallel[k].best(), seq.best()));
  }
}

TEST(RunMany, PropagatesErrors) {
  const auto p = benchmarks::g08();
  RunConfig bad = small_config();
  bad.lambda = 2;
  const std::vector<RunTask> tasks = {{&p, small_config()}, {&p, bad}};
  EXPECT_THROW(run_many(tasks, 2), ConfigError);
}
