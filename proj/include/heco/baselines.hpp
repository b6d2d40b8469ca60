#pragma once

// Single-objective baselines: the one-individual elitist EA and its
// two-objective counterpart on the wide-gap toy, and an LSHADE44-style DE
// that selects on a single equivalent objective.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "heco/benchmarks.hpp"
#include "heco/de_engine.hpp"
#include "heco/objectives.hpp"
#include "heco/problem.hpp"
#include "heco/random.hpp"
#include "heco/run_record.hpp"

namespace heco {

// ---------------------------------------------------------------------------
// Wide-gap hitting-time experiment

struct WideGapConfig {
  double start_x = 2000.0;
  double target_lower = 0.0;
  double target_upper = 1000.0;
  long max_generations = 100000;
  int trials = 50;
  std::uint64_t seed = 1;
};

struct HittingTimeResult {
  /// First generation with a member in the target interval; nullopt when censored.
  std::vector<std::optional<long>> hit_generation;

  int successes() const {
    return static_cast<int>(std::count_if(hit_generation.begin(), hit_generation.end(),
                                          [](const auto& h) { return h.has_value(); }));
  }

  std::vector<long> uncensored() const {
    std::vector<long> out;
    for (const auto& h : hit_generation)
      if (h) out.push_back(*h);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<double> mean() const {
    const auto h = uncensored();
    if (h.empty()) return std::nullopt;
    return static_cast<double>(std::accumulate(h.begin(), h.end(), 0L)) /
           static_cast<double>(h.size());
  }

  /// Lower median of the uncensored hitting generations.
  std::optional<long> median() const {
    const auto h = uncensored();
    if (h.empty()) return std::nullopt;
    return h[(h.size() + 1) / 2 - 1];
  }
};

namespace widegap {

/// Elitist ordering used by the single-objective EA: f when feasible, v + 3000 otherwise.
inline double equivalent(const EvaluatedPoint& p) { return p.feasible() ? p.f : p.v + 3000.0; }

/// y = x + U(-1, 1), clamped to the box.
inline double step(double x, const ConstrainedProblem& problem, Random& rng) {
  return std::clamp(x + rng.uniform(-1.0, 1.0), problem.lower[0], problem.upper[0]);
}

inline bool in_target(const EvaluatedPoint& p, const WideGapConfig& cfg) {
  return p.x[0] >= cfg.target_lower && p.x[0] <= cfg.target_upper;
}

}  // namespace widegap

/// One-individual elitist EA selecting on the feasibility-rule objective.
inline HittingTimeResult run_soco_elitist(const WideGapConfig& cfg) {
  const ConstrainedProblem problem = benchmarks::example2();
  HittingTimeResult out;
  out.hit_generation.resize(static_cast<std::size_t>(cfg.trials));
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Random rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    EvaluatedPoint x = evaluate(problem, Vector{cfg.start_x});
    auto& hit = out.hit_generation[static_cast<std::size_t>(trial)];
    if (widegap::in_target(x, cfg)) {
      hit = 0;
      continue;
    }
    for (long g = 1; g <= cfg.max_generations; ++g) {
      EvaluatedPoint y = evaluate(problem, Vector{widegap::step(x.x[0], problem, rng)});
      if (widegap::equivalent(y) < widegap::equivalent(x)) x = std::move(y);
      if (widegap::in_target(x, cfg)) {
        hit = g;
        break;
      }
    }
  }
  return out;
}

/**
 * Two-individual elitist EA on (e, f) with weights (1, 0) and (0, 1).
 *
 * Both individuals mutate every generation and each may adopt either
 * offspring when it strictly improves its own criterion, so the f-driven
 * individual can walk across the infeasible gap.
 */
inline HittingTimeResult run_heco_two_weight(const WideGapConfig& cfg) {
  const ConstrainedProblem problem = benchmarks::example2();
  HittingTimeResult out;
  out.hit_generation.resize(static_cast<std::size_t>(cfg.trials));
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Random rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    EvaluatedPoint by_e = evaluate(problem, Vector{cfg.start_x});
    EvaluatedPoint by_f = by_e;
    auto& hit = out.hit_generation[static_cast<std::size_t>(trial)];
    if (widegap::in_target(by_e, cfg)) {
      hit = 0;
      continue;
    }
    for (long g = 1; g <= cfg.max_generations; ++g) {
      EvaluatedPoint child_e = evaluate(problem, Vector{widegap::step(by_e.x[0], problem, rng)});
      EvaluatedPoint child_f = evaluate(problem, Vector{widegap::step(by_f.x[0], problem, rng)});

      const EvaluatedPoint* next_e = &by_e;
      for (const auto* c : {&child_e, &child_f})
        if (widegap::equivalent(*c) < widegap::equivalent(*next_e)) next_e = c;
      const EvaluatedPoint* next_f = &by_f;
      for (const auto* c : {&child_e, &child_f})
        if (c->f < next_f->f) next_f = c;

      EvaluatedPoint new_e = *next_e;
      EvaluatedPoint new_f = *next_f;
      by_e = std::move(new_e);
      by_f = std::move(new_f);
      if (widegap::in_target(by_e, cfg) || widegap::in_target(by_f, cfg)) {
        hit = g;
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-objective DE baseline

enum class EquivalentFunction { DeathPenalty, FeasibilityRule };

inline EquivalentFunction parse_equivalent_function(const std::string& tag) {
  if (tag == "death-penalty") return EquivalentFunction::DeathPenalty;
  if (tag == "feasibility-rule") return EquivalentFunction::FeasibilityRule;
  throw ConfigError("unknown equivalent function '" + tag + "'");
}

struct SocoConfig {
  long fes_max = 20000;
  /// 0 selects 12 D (at least 20).
  long n0 = 0;
  long n_final = 4;
  double p_best = 0.1;
  std::uint64_t seed = 1;
  EquivalentFunction equivalent = EquivalentFunction::FeasibilityRule;
  /// Optional box for the initial population (defaults to the problem box).
  std::optional<Vector> init_lower;
  std::optional<Vector> init_upper;
  /// When set, every trial component stays within this distance of its parent.
  std::optional<double> max_step;
  StrategyParams strategy{};
  double archive_factor = 4.0;
};

namespace detail {

inline std::vector<double> equivalent_values(std::span<const EvaluatedPoint> pop,
                                             EquivalentFunction fn) {
  if (fn == EquivalentFunction::FeasibilityRule) return feasibility_rule_e(pop);
  std::vector<double> e(pop.size());
  for (std::size_t k = 0; k < pop.size(); ++k) e[k] = death_penalty_e(pop[k]);
  return e;
}

inline std::vector<std::size_t> order_by(const std::vector<double>& keys) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  return idx;
}

}  // namespace detail

/**
 * LSHADE44-style DE minimising one equivalent objective over the whole
 * population: current-to-pbest/1 and rand/1 crossed with binomial and
 * exponential crossover, competing strategies, success-history memories,
 * archive, and linear population reduction (worst removed first).
 */
inline RunRecord run_soco_generic(const ConstrainedProblem& problem, const SocoConfig& cfg) {
  problem.validate();
  const std::size_t dim = problem.dim();
  const long n0 = cfg.n0 > 0 ? cfg.n0 : std::max<long>(12 * static_cast<long>(dim), 20);
  if (cfg.n_final < 4) throw ConfigError("final population must hold at least 4 members");
  if (n0 < cfg.n_final) throw ConfigError("initial population smaller than final population");
  if (cfg.fes_max < n0) throw ConfigError("FES budget is smaller than the initial population");
  if (!(cfg.p_best > 0.0 && cfg.p_best <= 1.0)) throw ConfigError("p_best must lie in (0, 1]");

  const Vector& init_lo = cfg.init_lower ? *cfg.init_lower : problem.lower;
  const Vector& init_hi = cfg.init_upper ? *cfg.init_upper : problem.upper;
  if (init_lo.size() != dim || init_hi.size() != dim)
    throw ConfigError("initialisation box has the wrong dimension");

  Random rng(cfg.seed);
  Evaluator evaluator(problem);
  BestTracker tracker;
  RunRecord record;

  std::vector<EvaluatedPoint> pop;
  for (long k = 0; k < n0; ++k) {
    Vector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = rng.uniform(init_lo[j], init_hi[j]);
    pop.push_back(evaluator(x));
    tracker.observe(pop.back());
  }
  record.trace.push_back(tracker.sample(evaluator.count()));

  StrategyState strategies(cfg.strategy);
  ExternalArchive archive;
  const PopSizeSchedule sizes{n0, cfg.n_final, cfg.fes_max};

  std::vector<std::size_t> all(pop.size());
  while (evaluator.count() < cfg.fes_max) {
    const std::size_t n = pop.size();
    all.resize(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto ranking = detail::order_by(detail::equivalent_values(pop, cfg.equivalent));
    const std::size_t top = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::lround(cfg.p_best * static_cast<double>(n))));

    std::vector<EvaluatedPoint> trials;
    std::vector<std::size_t> parents, used_strategy;
    std::vector<ControlParameters> used_params;
    for (std::size_t i = 0; i < n && evaluator.count() < cfg.fes_max; ++i) {
      const std::size_t k = select_strategy(strategies, rng);
      const ControlParameters cp = sample_F_CR(strategies, k, rng);
      Vector mutant;
      if (strategy_mutation(k) == Mutation::CurrentToBest) {
        const std::size_t pbest = ranking[rng.index(std::min(top, n))];
        mutant = mutate_current_to_qbest(i, pbest, pop, archive.entries(), cp.F, rng);
      } else {
        mutant = mutate_rand1(i, all, pop, cp.F, rng);
      }
      Vector trial = strategy_crossover(k) == Crossover::Binomial
                         ? crossover_binomial(pop[i].x, mutant, cp.CR, rng)
                         : crossover_exponential(pop[i].x, mutant, cp.CR, rng);
      if (cfg.max_step) {
        for (std::size_t j = 0; j < dim; ++j)
          trial[j] = std::clamp(trial[j], pop[i].x[j] - *cfg.max_step, pop[i].x[j] + *cfg.max_step);
      }
      trial = repair_bounds(trial, pop[i].x, problem.lower, problem.upper);
      trials.push_back(evaluator(trial));
      tracker.observe(trials.back());
      parents.push_back(i);
      used_strategy.push_back(k);
      used_params.push_back(cp);
    }

    // Selection scores come from the union of parents and trials.
    std::vector<EvaluatedPoint> combined = pop;
    combined.insert(combined.end(), trials.begin(), trials.end());
    const auto e = detail::equivalent_values(combined, cfg.equivalent);

    std::array<std::vector<double>, kNumStrategies> success_F, success_CR, improvement;
    for (std::size_t s = 0; s < trials.size(); ++s) {
      const std::size_t i = parents[s];
      const double e_parent = e[i];
      const double e_trial = e[n + s];
      if (e_trial < e_parent) {
        const std::size_t k = used_strategy[s];
        success_F[k].push_back(used_params[s].F);
        success_CR[k].push_back(used_params[s].CR);
        improvement[k].push_back(std::abs(pop[i].f - trials[s].f) + std::abs(pop[i].v - trials[s].v));
        record_strategy_success(strategies, k);
        archive.insert(pop[i].x);
      }
      if (e_trial <= e_parent) pop[i] = trials[s];
    }
    for (std::size_t k = 0; k < kNumStrategies; ++k)
      update_memories(strategies, k, success_F[k], success_CR[k], improvement[k]);

    const auto required =
        static_cast<std::size_t>(required_pop_size(evaluator.count(), sizes));
    if (pop.size() > required) {
      const auto order = detail::order_by(detail::equivalent_values(pop, cfg.equivalent));
      std::vector<EvaluatedPoint> kept;
      kept.reserve(required);
      std::vector<std::size_t> keep(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(required));
      std::sort(keep.begin(), keep.end());
      for (std::size_t idx : keep) kept.push_back(std::move(pop[idx]));
      pop = std::move(kept);
    }
    archive.trim(static_cast<std::size_t>(cfg.archive_factor * static_cast<double>(pop.size())), rng);

    ++record.generations;
    record.trace.push_back(tracker.sample(evaluator.count()));
  }

  tracker.finish(record);
  record.final_population = std::move(pop);
  record.consumed_fes = evaluator.count();
  return record;
}

}  // namespace heco
