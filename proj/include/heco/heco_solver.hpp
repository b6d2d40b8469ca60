#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heco/de_engine.hpp"
#include "heco/objectives.hpp"
#include "heco/parallel.hpp"
#include "heco/problem.hpp"
#include "heco/random.hpp"
#include "heco/run_record.hpp"

namespace heco {

enum class Variant {
  HecoDe,    ///< e~ as the equivalent term
  HcoDe,     ///< raw f in place of e~
  HecoDeFr,  ///< feasibility-rule e in place of e~
};

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::HecoDe:
      return "HECO-DE";
    case Variant::HcoDe:
      return "HCO-DE";
    case Variant::HecoDeFr:
      return "HECO-DE-FR";
  }
  return "?";
}

inline Variant parse_variant(const std::string& tag) {
  if (tag == "HECO-DE") return Variant::HecoDe;
  if (tag == "HCO-DE") return Variant::HcoDe;
  if (tag == "HECO-DE-FR" || tag == "HECO-DE(FR)") return Variant::HecoDeFr;
  throw ConfigError("unknown solver variant '" + tag + "'");
}

inline EquivalentTerm equivalent_term(Variant v) {
  switch (v) {
    case Variant::HcoDe:
      return EquivalentTerm::Objective;
    case Variant::HecoDeFr:
      return EquivalentTerm::FeasibilityRule;
    case Variant::HecoDe:
      break;
  }
  return EquivalentTerm::EnhancedDifference;
}

struct RunConfig {
  long fes_max = 20000;
  /// Initial population; 0 selects max(12 D, 10 lambda).
  long n0 = 0;
  /// Final population; 0 selects lambda.
  long n_final = 0;
  int lambda = 20;
  double gamma = 0.1;
  std::uint64_t seed = 1;
  Variant variant = Variant::HecoDe;
  StrategyParams strategy{};
  /// Archive capacity is archive_factor * N_t.
  double archive_factor = 4.0;
};

/// Defaults used on the CEC2006-style problems.
inline RunConfig cec2006_config(long fes_max = 500000) {
  RunConfig cfg;
  cfg.fes_max = fes_max;
  cfg.n0 = 450;
  cfg.lambda = 45;
  cfg.gamma = 0.7;
  return cfg;
}

inline long resolved_n0(const RunConfig& cfg, std::size_t dim) {
  if (cfg.n0 > 0) return cfg.n0;
  return std::max<long>(12 * static_cast<long>(dim), 10L * cfg.lambda);
}

inline long resolved_n_final(const RunConfig& cfg) {
  return cfg.n_final > 0 ? cfg.n_final : cfg.lambda;
}

/// Number of whole generations the budget allows after initialisation.
inline long generation_budget(long fes_max, long n0, int lambda) {
  if (fes_max <= n0) return 0;
  return (fes_max - n0) / lambda;
}

inline void validate(const RunConfig& cfg, std::size_t dim) {
  const long n0 = resolved_n0(cfg, dim);
  const long n_final = resolved_n_final(cfg);
  if (cfg.lambda < 4) throw ConfigError("lambda must be at least 4");
  if (cfg.lambda > n_final)
    throw ConfigError("lambda (" + std::to_string(cfg.lambda) +
                      ") exceeds the final population size (" + std::to_string(n_final) + ")");
  if (n_final > n0) throw ConfigError("final population size exceeds the initial size");
  if (cfg.fes_max < n0) throw ConfigError("FES budget is smaller than the initial population");
  if (!(cfg.gamma >= 0.0)) throw ConfigError("gamma must be nonnegative");
  if (cfg.strategy.memory_size == 0) throw ConfigError("memory size must be positive");
}

namespace detail {

inline Vector uniform_point(const ConstrainedProblem& problem, Random& rng) {
  Vector x(problem.dim());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = rng.uniform(problem.lower[j], problem.upper[j]);
  return x;
}

/// First k entries of a uniformly shuffled 0..n-1.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                           Random& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t s = 0; s < k; ++s) std::swap(idx[s], idx[s + rng.index(n - s)]);
  idx.resize(k);
  return idx;
}

template <typename T>
void remove_random(std::vector<T>& items, std::size_t target_size, Random& rng) {
  while (items.size() > target_size) {
    const std::size_t k = rng.index(items.size());
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(k));
  }
}

}  // namespace detail

/**
 * One HECO-DE run.
 *
 * Each generation draws a subpopulation Q of lambda members. Member i of Q
 * owns subproblem i, scalarised as w1 e~ + w2 v + w3 f over terms min-max
 * normalised on Q plus the trial. A trial replaces its parent only when it
 * strictly lowers that subproblem's value. Replaced parents feed the archive;
 * the population then shrinks linearly toward n_final by random deletion.
 */
inline RunRecord run_heco_de(const ConstrainedProblem& problem, const RunConfig& cfg) {
  problem.validate();
  validate(cfg, problem.dim());

  const long n0 = resolved_n0(cfg, problem.dim());
  const long n_final = resolved_n_final(cfg);
  const std::size_t lambda = static_cast<std::size_t>(cfg.lambda);
  const long t_max = generation_budget(cfg.fes_max, n0, cfg.lambda);
  const EquivalentTerm term = equivalent_term(cfg.variant);
  const WeightScheduleConfig weights{cfg.lambda, t_max, cfg.gamma};
  const PopSizeSchedule sizes{n0, n_final, t_max};

  Random rng(cfg.seed);
  Evaluator evaluator(problem);
  BestTracker tracker;
  RunRecord record;

  std::vector<EvaluatedPoint> pop;
  pop.reserve(static_cast<std::size_t>(n0));
  for (long k = 0; k < n0; ++k) {
    pop.push_back(evaluator(detail::uniform_point(problem, rng)));
    tracker.observe(pop.back());
  }
  record.trace.push_back(tracker.sample(evaluator.count()));

  StrategyState strategies(cfg.strategy);
  ExternalArchive archive;

  std::vector<EvaluatedPoint> subpop(lambda + 1);
  std::array<std::vector<double>, kNumStrategies> success_F, success_CR, improvement;
  std::vector<std::optional<EvaluatedPoint>> accepted(lambda);

  for (long t = 0; t < t_max; ++t) {
    const auto q_index = detail::sample_without_replacement(pop.size(), lambda, rng);
    for (std::size_t i = 0; i < lambda; ++i) subpop[i] = pop[q_index[i]];
    const auto parent_terms =
        normalize_population(std::span<const EvaluatedPoint>(subpop.data(), lambda), term);

    for (std::size_t k = 0; k < kNumStrategies; ++k) {
      success_F[k].clear();
      success_CR[k].clear();
      improvement[k].clear();
    }
    std::fill(accepted.begin(), accepted.end(), std::nullopt);

    for (std::size_t i = 0; i < lambda; ++i) {
      const WeightTriple w = weight_triple(static_cast<int>(i + 1), t, weights);
      const std::size_t target = q_index[i];
      const std::size_t k = select_strategy(strategies, rng);
      const ControlParameters cp = sample_F_CR(strategies, k, rng);

      Vector mutant;
      if (strategy_mutation(k) == Mutation::CurrentToBest) {
        const std::size_t qbest = q_index[scalarized_argmin(w, parent_terms)];
        mutant = mutate_current_to_qbest(target, qbest, pop, archive.entries(), cp.F, rng);
      } else {
        mutant = mutate_rand1(target, q_index, pop, cp.F, rng);
      }
      Vector trial = strategy_crossover(k) == Crossover::Binomial
                         ? crossover_binomial(pop[target].x, mutant, cp.CR, rng)
                         : crossover_exponential(pop[target].x, mutant, cp.CR, rng);
      trial = repair_bounds(trial, pop[target].x, problem.lower, problem.upper);

      subpop[lambda] = evaluator(trial);
      tracker.observe(subpop[lambda]);

      const auto terms = normalize_population(subpop, term);
      const double parent_value = scalarize(w, terms[i]);
      const double trial_value = scalarize(w, terms[lambda]);
      if (trial_value < parent_value) {
        accepted[i] = subpop[lambda];
        archive.insert(pop[target].x);
        success_F[k].push_back(cp.F);
        success_CR[k].push_back(cp.CR);
        improvement[k].push_back(parent_value - trial_value);
        record_strategy_success(strategies, k);
      }
    }

    for (std::size_t k = 0; k < kNumStrategies; ++k)
      update_memories(strategies, k, success_F[k], success_CR[k], improvement[k]);
    for (std::size_t i = 0; i < lambda; ++i) {
      if (accepted[i]) pop[q_index[i]] = std::move(*accepted[i]);
    }

    const long required = required_pop_size(t + 1, sizes);
    detail::remove_random(pop, static_cast<std::size_t>(required), rng);
    archive.trim(static_cast<std::size_t>(cfg.archive_factor * static_cast<double>(required)), rng);

    ++record.generations;
    record.trace.push_back(tracker.sample(evaluator.count()));
  }

  tracker.finish(record);
  record.final_population = std::move(pop);
  record.consumed_fes = evaluator.count();
  return record;
}

/// Same loop as run_heco_de; the variant tag picks the equivalent term.
inline RunRecord run_variant(const ConstrainedProblem& problem, const RunConfig& cfg) {
  return run_heco_de(problem, cfg);
}

struct RunTask {
  const ConstrainedProblem* problem = nullptr;
  RunConfig config;
};

/// Runs independent tasks on `jobs` threads; results come back in task order.
inline std::vector<RunRecord> run_many(std::span<const RunTask> tasks, unsigned jobs = 0) {
  std::vector<RunRecord> out(tasks.size());
  const auto errors = parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    out[i] = run_variant(*tasks[i].problem, tasks[i].config);
  });
  rethrow_first(errors);
  return out;
}

}  // namespace heco
