#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heco/benchmarks.hpp"
#include "heco/problem.hpp"
#include "heco/random.hpp"

using namespace heco;

namespace {

ConstrainedProblem single_equality(double tolerance) {
  ConstrainedProblem p;
  p.name = "eq";
  p.lower = {-1.0};
  p.upper = {1.0};
  p.objective = [](std::span<const double> x) { return x[0]; };
  p.equalities = {[](std::span<const double> x) { return x[0]; }};
  p.eq_tolerance = tolerance;
  return p;
}

}  // namespace

TEST(Evaluate, Example1OptimumIsFeasible) {
  const auto p = benchmarks::example1();
  const auto e = evaluate(p, Vector{0.0});
  EXPECT_EQ(e.f, 0.0);
  EXPECT_EQ(e.v, 0.0);
  EXPECT_TRUE(is_feasible(e));
}

TEST(Evaluate, Example1LeftBoundaryViolatesByOneHalf) {
  const auto e = evaluate(benchmarks::example1(), Vector{-1000.0});
  EXPECT_EQ(e.f, -1000.0);
  EXPECT_NEAR(e.v, 0.5, 1e-15);
  EXPECT_FALSE(is_feasible(e));
}

TEST(Evaluate, Example1NegativeSideIsInfeasible) {
  EXPECT_FALSE(is_feasible(evaluate(benchmarks::example1(), Vector{-100.0})));
}

TEST(Evaluate, EqualityWithinToleranceClampsToZero) {
  const auto e = evaluate(single_equality(1e-4), Vector{5e-5});
  EXPECT_EQ(e.eq_violation[0], 0.0);
  EXPECT_EQ(e.v, 0.0);
}

TEST(Evaluate, Example2FullViolation) {
  const auto e = evaluate(benchmarks::example2(), Vector{1500.0});
  EXPECT_NEAR(e.v, 1.0, 1e-15);
}

TEST(Evaluate, Example2InsideFirstPlateau) {
  EXPECT_TRUE(is_feasible(evaluate(benchmarks::example2(), Vector{500.0})));
}

TEST(IsFeasible, StrictZeroTest) {
  EvaluatedPoint p;
  p.v = 0.0;
  EXPECT_TRUE(is_feasible(p));
  p.v = 1e-12;
  EXPECT_FALSE(is_feasible(p));
}

TEST(Evaluate, OutOfBoundsIsContractViolation) {
  EXPECT_THROW(evaluate(benchmarks::example1(), Vector{1000.5}), ContractViolation);
  EXPECT_THROW(evaluate(benchmarks::example1(), Vector{0.0, 0.0}), ContractViolation);
}

TEST(Evaluate, NonFiniteValuesReportTheirSource) {
  ConstrainedProblem p = single_equality(0.0);
  p.inequalities = {[](std::span<const double>) { return 0.0; },
                    [](std::span<const double>) { return std::nan(""); }};
  try {
    evaluate(p, Vector{0.0});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.source, EvaluationError::Source::Inequality);
    EXPECT_EQ(e.index, 1u);
  }
  p.inequalities.clear();
  p.objective = [](std::span<const double>) { return HUGE_VAL; };
  try {
    evaluate(p, Vector{0.0});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.source, EvaluationError::Source::Objective);
  }
}

TEST(Evaluator, CountsOneEvaluationPerCall) {
  const auto p = benchmarks::example2();
  Evaluator ev(p);
  ev(Vector{1.0});
  ev(Vector{2.0});
  EXPECT_EQ(ev.count(), 2);
}

TEST(Evaluate, ViolationIsSumOfParts) {
  // Property: v >= 0 and v == sum of parts; v == 0 exactly when every part is 0.
  ConstrainedProblem p;
  p.name = "mixed";
  p.lower = {-2.0, -2.0};
  p.upper = {2.0, 2.0};
  p.objective = [](std::span<const double> x) { return x[0] * x[1]; };
  p.inequalities = {[](std::span<const double> x) { return x[0] + x[1] - 1.0; },
                    [](std::span<const double> x) { return x[0] * x[0] - 1.0; }};
  p.equalities = {[](std::span<const double> x) { return x[0] - x[1]; }};
  p.eq_tolerance = 0.3;
  Random rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const Vector x = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const auto e = evaluate(p, x);
    double sum = 0.0;
    bool all_zero = true;
    for (double vi : e.ineq_violation) {
      EXPECT_GE(vi, 0.0);
      sum += vi;
      all_zero = all_zero && vi == 0.0;
    }
    for (double vi : e.eq_violation) {
      EXPECT_GE(vi, 0.0);
      sum += vi;
      all_zero = all_zero && vi == 0.0;
    }
    EXPECT_EQ(e.v, sum);
    EXPECT_EQ(e.feasible(), all_zero);
  }
}

TEST(Evaluate, LargerToleranceNeverIncreasesEqualityViolation) {
  Random rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector x = {rng.uniform(-1.0, 1.0)};
    const double eps1 = rng.uniform(0.0, 0.5);
    const double eps2 = eps1 + rng.uniform(0.0, 0.5);
    const auto a = evaluate(single_equality(eps1), x);
    const auto b = evaluate(single_equality(eps2), x);
    EXPECT_LE(b.eq_violation[0], a.eq_violation[0]);
  }
}

TEST(Evaluate, Example2FeasibleRegionMatchesTwoIntervals) {
  const auto p = benchmarks::example2();
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const double x = -500.0 + 3500.0 * k / (n - 1);
    const bool expected = (x >= 0.0 && x <= 1000.0) || (x >= 2000.0 && x <= 3000.0);
    EXPECT_EQ(is_feasible(evaluate(p, Vector{x})), expected) << "x = " << x;
  }
}

TEST(Registry, LookupAndCustomRegistration) {
  auto r = benchmarks::builtin_problems();
  EXPECT_TRUE(r.contains("g24"));
  EXPECT_THROW(r.at("nope"), ConfigError);
  r.add([] {
    ConstrainedProblem p;
    p.name = "custom";
    p.lower = {0.0};
    p.upper = {1.0};
    p.objective = [](std::span<const double> x) { return x[0]; };
    return p;
  });
  EXPECT_EQ(r.at("custom").dim(), 1u);
}

TEST(Registry, RejectsInvalidProblems) {
  ProblemRegistry r;
  ConstrainedProblem p;
  p.name = "bad";
  p.lower = {1.0};
  p.upper = {0.0};
  p.objective = [](std::span<const double> x) { return x[0]; };
  EXPECT_THROW(r.add(p), ConfigError);
}
