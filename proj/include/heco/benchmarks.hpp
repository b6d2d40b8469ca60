#pragma once

// Built-in test problems: two one-dimensional sine-constrained toys and four
// small CEC2006 functions (g06, g08, g11, g24).

#include <cmath>
#include <numbers>
#include <span>

#include "heco/problem.hpp"

namespace heco::benchmarks {

using std::numbers::pi;

/// min x on [-1000, 1000] s.t. sin(x pi / 1200) >= 0. Optimum x = 0.
inline ConstrainedProblem example1() {
  ConstrainedProblem p;
  p.name = "example1";
  p.lower = {-1000.0};
  p.upper = {1000.0};
  p.objective = [](std::span<const double> x) { return x[0]; };
  p.inequalities = {[](std::span<const double> x) { return -std::sin(x[0] * pi / 1200.0); }};
  p.known_optimum = 0.0;
  p.known_solution = Vector{0.0};
  return p;
}

/// min x on [-500, 3000] s.t. sin(x pi / 1000) >= 0.
/// Feasible set [0, 1000] u [2000, 3000]; optimum x = 0.
inline ConstrainedProblem example2() {
  ConstrainedProblem p;
  p.name = "example2";
  p.lower = {-500.0};
  p.upper = {3000.0};
  p.objective = [](std::span<const double> x) { return x[0]; };
  p.inequalities = {[](std::span<const double> x) { return -std::sin(x[0] * pi / 1000.0); }};
  p.known_optimum = 0.0;
  p.known_solution = Vector{0.0};
  return p;
}

inline ConstrainedProblem g06() {
  ConstrainedProblem p;
  p.name = "g06";
  p.lower = {13.0, 0.0};
  p.upper = {100.0, 100.0};
  p.objective = [](std::span<const double> x) {
    return std::pow(x[0] - 10.0, 3) + std::pow(x[1] - 20.0, 3);
  };
  p.inequalities = {
      [](std::span<const double> x) {
        return -(x[0] - 5.0) * (x[0] - 5.0) - (x[1] - 5.0) * (x[1] - 5.0) + 100.0;
      },
      [](std::span<const double> x) {
        return (x[0] - 6.0) * (x[0] - 6.0) + (x[1] - 5.0) * (x[1] - 5.0) - 82.81;
      },
  };
  p.known_optimum = -6961.8138755802;
  p.known_solution = Vector{14.09500000000000064, 0.8429607892154795668};
  return p;
}

inline ConstrainedProblem g08() {
  ConstrainedProblem p;
  p.name = "g08";
  p.lower = {0.0, 0.0};
  p.upper = {10.0, 10.0};
  p.objective = [](std::span<const double> x) {
    const double s1 = std::sin(2.0 * pi * x[0]);
    // x1 = 0 is a removable singularity of the published formula; report 0 there.
    const double den = x[0] * x[0] * x[0] * (x[0] + x[1]);
    if (den == 0.0) return 0.0;
    return -(s1 * s1 * s1) * std::sin(2.0 * pi * x[1]) / den;
  };
  p.inequalities = {
      [](std::span<const double> x) { return x[0] * x[0] - x[1] + 1.0; },
      [](std::span<const double> x) { return 1.0 - x[0] + (x[1] - 4.0) * (x[1] - 4.0); },
  };
  p.known_optimum = -0.0958250414;
  p.known_solution = Vector{1.22797135260752599, 4.24537336612274885};
  return p;
}

inline ConstrainedProblem g11() {
  ConstrainedProblem p;
  p.name = "g11";
  p.lower = {-1.0, -1.0};
  p.upper = {1.0, 1.0};
  p.objective = [](std::span<const double> x) { return x[0] * x[0] + (x[1] - 1.0) * (x[1] - 1.0); };
  p.equalities = {[](std::span<const double> x) { return x[1] - x[0] * x[0]; }};
  p.known_optimum = 0.7499;
  p.known_solution = Vector{-0.707036070037170616, 0.500000004333606807};
  return p;
}

inline ConstrainedProblem g24() {
  ConstrainedProblem p;
  p.name = "g24";
  p.lower = {0.0, 0.0};
  p.upper = {3.0, 4.0};
  p.objective = [](std::span<const double> x) { return -x[0] - x[1]; };
  p.inequalities = {
      [](std::span<const double> x) {
        const double a = x[0];
        return -2.0 * std::pow(a, 4) + 8.0 * std::pow(a, 3) - 8.0 * a * a + x[1] - 2.0;
      },
      [](std::span<const double> x) {
        const double a = x[0];
        return -4.0 * std::pow(a, 4) + 32.0 * std::pow(a, 3) - 88.0 * a * a + 96.0 * a + x[1] -
               36.0;
      },
  };
  p.known_optimum = -5.5080132716;
  // Published x2 = 3.17849307411774 sits 1.7e-13 outside the second constraint.
  p.known_solution = Vector{2.32952019747762, 3.1784930741};
  return p;
}

/// Registry holding every built-in problem.
inline ProblemRegistry builtin_problems() {
  ProblemRegistry r;
  r.add(example1());
  r.add(example2());
  r.add(g06());
  r.add(g08());
  r.add(g11());
  r.add(g24());
  return r;
}

}  // namespace heco::benchmarks
