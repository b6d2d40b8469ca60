// Registers a user-defined problem and solves it with HECO-DE.
//
//   min (x1 - 2)^2 + (x2 - 1)^2
//   s.t. x1 + x2 <= 2,  x1 - 2 x2 = -1,  x in [-5, 5]^2
//
// The constrained optimum is x = (1, 1) with f = 1; the 1e-4 equality
// tolerance admits points with f slightly below 1.

#include <iostream>

#include "heco/heco.hpp"

int main() {
  heco::ConstrainedProblem p;
  p.name = "quadratic";
  p.lower = {-5.0, -5.0};
  p.upper = {5.0, 5.0};
  p.objective = [](std::span<const double> x) {
    return (x[0] - 2.0) * (x[0] - 2.0) + (x[1] - 1.0) * (x[1] - 1.0);
  };
  p.inequalities = {[](std::span<const double> x) { return x[0] + x[1] - 2.0; }};
  p.equalities = {[](std::span<const double> x) { return x[0] - 2.0 * x[1] + 1.0; }};

  heco::ProblemRegistry registry = heco::benchmarks::builtin_problems();
  registry.add(p);

  heco::RunConfig cfg;
  cfg.fes_max = 20000;
  cfg.seed = 7;
  const heco::RunRecord r = heco::run_heco_de(registry.at("quadratic"), cfg);

  const auto& best = r.best();
  std::cout << "x = (" << best.x[0] << ", " << best.x[1] << "), f = " << best.f
            << ", v = " << best.v << ", evaluations = " << r.consumed_fes << "\n";
  return 0;
}
