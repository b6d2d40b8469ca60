#pragma once

// Equivalent and helper objectives over a population, min-max normalisation,
// and the dynamic weighted-sum decomposition.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "heco/problem.hpp"

namespace heco {

/// Ordered infinity standing in for "+inf" of the death-penalty objective.
inline constexpr double kDeathPenalty = std::numeric_limits<double>::infinity();

/// f(x) for feasible points, kDeathPenalty otherwise.
inline double death_penalty_e(const EvaluatedPoint& p) {
  return p.feasible() ? p.f : kDeathPenalty;
}

/**
 * Feasibility-rule objective: f(x) for feasible members, v(x) + f_F(P) for
 * infeasible ones, where f_F(P) is the largest feasible f in the population
 * (0 when there is none).
 */
inline std::vector<double> feasibility_rule_e(std::span<const EvaluatedPoint> pop) {
  bool any_feasible = false;
  double worst_feasible = 0.0;
  for (const auto& p : pop) {
    if (!p.feasible()) continue;
    worst_feasible = any_feasible ? std::max(worst_feasible, p.f) : p.f;
    any_feasible = true;
  }
  std::vector<double> e(pop.size());
  for (std::size_t k = 0; k < pop.size(); ++k) {
    e[k] = pop[k].feasible() ? pop[k].f : pop[k].v + worst_feasible;
  }
  return e;
}

/// Index of the best member: least f among feasible members if any, else least v.
/// Ties go to the lowest index.
inline std::size_t best_of_population(std::span<const EvaluatedPoint> pop) {
  std::size_t best = 0;
  bool best_feasible = pop[0].feasible();
  for (std::size_t k = 1; k < pop.size(); ++k) {
    const auto& p = pop[k];
    if (p.feasible()) {
      if (!best_feasible || p.f < pop[best].f) {
        best = k;
        best_feasible = true;
      }
    } else if (!best_feasible && p.v < pop[best].v) {
      best = k;
    }
  }
  return best;
}

/// |f(x) - f(x*_P)| with x*_P from best_of_population.
inline std::vector<double> e_tilde(std::span<const EvaluatedPoint> pop) {
  const double f_best = pop[best_of_population(pop)].f;
  std::vector<double> out(pop.size());
  for (std::size_t k = 0; k < pop.size(); ++k) out[k] = std::abs(pop[k].f - f_best);
  return out;
}

/// (g - min) / (max - min); all zeros when every value is equal.
inline std::vector<double> min_max_normalize(std::span<const double> values) {
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  std::vector<double> out(values.size(), 0.0);
  if (range > 0.0) {
    for (std::size_t k = 0; k < values.size(); ++k) out[k] = (values[k] - lo) / range;
  }
  return out;
}

/// Weights on (e~, v, f) for one subproblem.
struct WeightTriple {
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
};

struct WeightScheduleConfig {
  int lambda = 20;
  long t_max = 1;
  double gamma = 0.1;
};

/**
 * Weights of subproblem i (1-based) at generation t.
 *
 * w1 and w2 grow linearly in both t and i, w3 shrinks in both; the last
 * subproblem (i = lambda) carries w3 = 0 throughout, so its objective is an
 * equivalent one whenever w1, w2 > 0.
 */
inline WeightTriple weight_triple(int i, long t, const WeightScheduleConfig& cfg) {
  const double progress =
      cfg.t_max > 0 ? static_cast<double>(t) / static_cast<double>(cfg.t_max) : 1.0;
  const double position = static_cast<double>(i) / static_cast<double>(cfg.lambda);
  WeightTriple w;
  w.w1 = progress * position;
  w.w2 = progress * position + cfg.gamma;
  w.w3 = (1.0 - progress) * (1.0 - position);
  return w;
}

/// Normalised (e~, v, f) of one population member.
struct NormalizedTriplet {
  double e_tilde = 0.0;
  double v = 0.0;
  double f = 0.0;
};

inline double scalarize(const WeightTriple& w, const NormalizedTriplet& n) {
  return w.w1 * n.e_tilde + w.w2 * n.v + w.w3 * n.f;
}

/// Which function fills the "equivalent" slot of the weighted sum.
enum class EquivalentTerm {
  EnhancedDifference,  ///< e~ = |f - f(x*_P)|
  Objective,           ///< raw f (no equivalent objective)
  FeasibilityRule,     ///< feasibility-rule e
};

/// Normalises the three terms over pop. Each component lands in [0, 1].
inline std::vector<NormalizedTriplet> normalize_population(
    std::span<const EvaluatedPoint> pop, EquivalentTerm term = EquivalentTerm::EnhancedDifference) {
  std::vector<double> first;
  switch (term) {
    case EquivalentTerm::EnhancedDifference:
      first = e_tilde(pop);
      break;
    case EquivalentTerm::Objective:
      first.reserve(pop.size());
      for (const auto& p : pop) first.push_back(p.f);
      break;
    case EquivalentTerm::FeasibilityRule:
      first = feasibility_rule_e(pop);
      break;
  }
  std::vector<double> v(pop.size()), f(pop.size());
  for (std::size_t k = 0; k < pop.size(); ++k) {
    v[k] = pop[k].v;
    f[k] = pop[k].f;
  }
  const auto first_n = min_max_normalize(first);
  const auto v_n = min_max_normalize(v);
  const auto f_n = min_max_normalize(f);
  std::vector<NormalizedTriplet> out(pop.size());
  for (std::size_t k = 0; k < pop.size(); ++k) out[k] = {first_n[k], v_n[k], f_n[k]};
  return out;
}

/// Argmin of the scalarised objective; lowest index wins ties.
inline std::size_t scalarized_argmin(const WeightTriple& w,
                                     std::span<const NormalizedTriplet> terms) {
  std::size_t best = 0;
  double best_value = scalarize(w, terms[0]);
  for (std::size_t k = 1; k < terms.size(); ++k) {
    const double value = scalarize(w, terms[k]);
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }
  return best;
}

}  // namespace heco
