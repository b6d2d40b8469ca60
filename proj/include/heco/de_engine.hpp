#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "heco/problem.hpp"
#include "heco/random.hpp"

namespace heco {

/// Too few population members to draw distinct donors.
struct InsufficientPopulation : Error {
  using Error::Error;
};

inline constexpr std::size_t kNumStrategies = 4;

enum class Mutation { CurrentToBest, Rand1 };
enum class Crossover { Binomial, Exponential };

/// Strategies are the product {current-to-best/1, rand/1} x {binomial, exponential}.
constexpr Mutation strategy_mutation(std::size_t k) {
  return k < 2 ? Mutation::CurrentToBest : Mutation::Rand1;
}
constexpr Crossover strategy_crossover(std::size_t k) {
  return k % 2 == 0 ? Crossover::Binomial : Crossover::Exponential;
}

// ---------------------------------------------------------------------------
// Mutation

/// u = x + F (best - x) + F (r1 - r2)
inline Vector current_to_best_1(std::span<const double> x, std::span<const double> best,
                                std::span<const double> r1, std::span<const double> r2,
                                double F) {
  Vector u(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    u[j] = x[j] + F * (best[j] - x[j]) + F * (r1[j] - r2[j]);
  }
  return u;
}

/// u = r1 + F (r2 - r3)
inline Vector rand_1(std::span<const double> r1, std::span<const double> r2,
                     std::span<const double> r3, double F) {
  Vector u(r1.size());
  for (std::size_t j = 0; j < r1.size(); ++j) u[j] = r1[j] + F * (r2[j] - r3[j]);
  return u;
}

/**
 * current-to-Qbest/1 mutation of population[target].
 *
 * r1 is drawn from the population, r2 from the population joined with the
 * archive; both differ from the target and from each other.
 */
template <VariateSource R>
Vector mutate_current_to_qbest(std::size_t target, std::size_t qbest,
                               std::span<const EvaluatedPoint> population,
                               std::span<const Vector> archive, double F, R& rng) {
  const std::size_t n = population.size();
  if (n < 3) throw InsufficientPopulation("current-to-Qbest/1 needs at least 3 members");
  std::size_t r1;
  do {
    r1 = rng.index(n);
  } while (r1 == target);
  std::size_t r2;
  do {
    r2 = rng.index(n + archive.size());
  } while (r2 == target || r2 == r1);
  const auto& x_r2 = r2 < n ? population[r2].x : archive[r2 - n];
  return current_to_best_1(population[target].x, population[qbest].x, population[r1].x, x_r2,
                           F);
}

/// rand/1 with three mutually distinct donors drawn from `subpop` (indices into
/// population), none equal to the target.
template <VariateSource R>
Vector mutate_rand1(std::size_t target, std::span<const std::size_t> subpop,
                    std::span<const EvaluatedPoint> population, double F, R& rng) {
  const std::size_t n = subpop.size();
  if (n < 4) throw InsufficientPopulation("rand/1 needs a subpopulation of at least 4");
  std::array<std::size_t, 3> picks{};
  for (std::size_t s = 0; s < 3; ++s) {
    std::size_t cand;
    bool clash;
    do {
      cand = subpop[rng.index(n)];
      clash = cand == target;
      for (std::size_t t = 0; t < s; ++t) clash = clash || cand == picks[t];
    } while (clash);
    picks[s] = cand;
  }
  return rand_1(population[picks[0]].x, population[picks[1]].x, population[picks[2]].x, F);
}

// ---------------------------------------------------------------------------
// Crossover

template <VariateSource R>
Vector crossover_binomial(std::span<const double> x, std::span<const double> u, double CR,
                          R& rng) {
  const std::size_t d = x.size();
  const std::size_t j_rand = rng.index(d);
  Vector y(x.begin(), x.end());
  for (std::size_t j = 0; j < d; ++j) {
    if (rng.uniform() <= CR || j == j_rand) y[j] = u[j];
  }
  return y;
}

/// Copies a wrap-around block from u starting at a random index; the block
/// grows while successive draws stay below CR.
template <VariateSource R>
Vector crossover_exponential(std::span<const double> x, std::span<const double> u, double CR,
                             R& rng) {
  const std::size_t d = x.size();
  const std::size_t start = rng.index(d);
  Vector y(x.begin(), x.end());
  std::size_t length = 0;
  do {
    const std::size_t j = (start + length) % d;
    y[j] = u[j];
    ++length;
  } while (length < d && rng.uniform() < CR);
  return y;
}

// ---------------------------------------------------------------------------
// Strategy competition and parameter memories

struct StrategyParams {
  std::size_t memory_size = 5;
  double n0 = 2.0;
  double delta = 1.0 / 20.0;
  double initial_F = 0.5;
  double initial_CR = 0.5;
  double F_scale = 0.1;
  double CR_scale = 0.1;
};

struct StrategyState {
  StrategyParams params;
  std::array<double, kNumStrategies> q{};
  std::array<long, kNumStrategies> successes{};
  std::array<Vector, kNumStrategies> memory_F;
  std::array<Vector, kNumStrategies> memory_CR;
  std::array<std::size_t, kNumStrategies> cursor{};

  explicit StrategyState(StrategyParams p = {}) : params(p) {
    q.fill(1.0 / kNumStrategies);
    for (std::size_t k = 0; k < kNumStrategies; ++k) {
      memory_F[k].assign(p.memory_size, p.initial_F);
      memory_CR[k].assign(p.memory_size, p.initial_CR);
    }
  }
};

/// q_k = (n_k + n0) / sum(n_i + n0). When some q_k drops below delta all
/// counts are reset and q returns to uniform.
inline void update_strategy_probabilities(StrategyState& s) {
  auto recompute = [&s] {
    double total = 0.0;
    for (long n : s.successes) total += static_cast<double>(n) + s.params.n0;
    for (std::size_t k = 0; k < kNumStrategies; ++k)
      s.q[k] = (static_cast<double>(s.successes[k]) + s.params.n0) / total;
  };
  recompute();
  if (*std::min_element(s.q.begin(), s.q.end()) < s.params.delta) {
    s.successes.fill(0);
    recompute();
  }
}

inline void record_strategy_success(StrategyState& s, std::size_t k) {
  ++s.successes[k];
  update_strategy_probabilities(s);
}

template <VariateSource R>
std::size_t select_strategy(const StrategyState& s, R& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < kNumStrategies; ++k) {
    acc += s.q[k];
    if (u < acc) return k;
  }
  return kNumStrategies - 1;
}

struct ControlParameters {
  double F = 0.5;
  double CR = 0.5;
};

/// F ~ Cauchy(MF[r], 0.1) redrawn while <= 0 and capped at 1;
/// CR ~ Normal(MCR[r], 0.1) clipped to [0, 1]. r is a uniform memory slot.
template <VariateSource R>
ControlParameters sample_F_CR(const StrategyState& s, std::size_t k, R& rng) {
  const std::size_t r = rng.index(s.memory_F[k].size());
  ControlParameters out;
  do {
    out.F = rng.cauchy(s.memory_F[k][r], s.params.F_scale);
  } while (!(out.F > 0.0));
  out.F = std::min(out.F, 1.0);
  out.CR = std::clamp(rng.normal(s.memory_CR[k][r], s.params.CR_scale), 0.0, 1.0);
  return out;
}

/// sum(w a^2) / sum(w a); weights default to equal when they sum to zero.
inline double weighted_lehmer_mean(std::span<const double> values,
                                   std::span<const double> weights) {
  double total_w = 0.0;
  for (double w : weights) total_w += w;
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double w = total_w > 0.0 ? weights[j] / total_w : 1.0;
    num += w * values[j] * values[j];
    den += w * values[j];
  }
  return den > 0.0 ? num / den : 0.0;
}

/// Writes the improvement-weighted Lehmer means of the successful F and CR
/// values into strategy k's memories and advances its cursor. No-op when empty.
inline void update_memories(StrategyState& s, std::size_t k, std::span<const double> success_F,
                            std::span<const double> success_CR,
                            std::span<const double> improvements) {
  if (success_F.empty()) return;
  auto& cursor = s.cursor[k];
  s.memory_F[k][cursor] = weighted_lehmer_mean(success_F, improvements);
  s.memory_CR[k][cursor] = weighted_lehmer_mean(success_CR, improvements);
  cursor = (cursor + 1) % s.memory_F[k].size();
}

// ---------------------------------------------------------------------------
// Population size, archive, bounds

struct PopSizeSchedule {
  long initial_size = 0;
  long final_size = 0;
  long t_max = 0;
};

/// round(N0 - t/T (N0 - N_final))
inline long required_pop_size(long t, const PopSizeSchedule& s) {
  if (s.t_max <= 0) return s.initial_size;
  const double frac = static_cast<double>(t) / static_cast<double>(s.t_max);
  return std::lround(static_cast<double>(s.initial_size) -
                     frac * static_cast<double>(s.initial_size - s.final_size));
}

class ExternalArchive {
 public:
  void insert(Vector x) { entries_.push_back(std::move(x)); }

  /// Removes uniformly chosen entries until size() <= cap.
  template <VariateSource R>
  void trim(std::size_t cap, R& rng) {
    while (entries_.size() > cap) {
      const std::size_t k = rng.index(entries_.size());
      entries_[k] = std::move(entries_.back());
      entries_.pop_back();
    }
  }

  std::span<const Vector> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Vector> entries_;
};

template <VariateSource R>
void archive_insert_and_trim(ExternalArchive& archive, Vector x, std::size_t cap, R& rng) {
  archive.insert(std::move(x));
  archive.trim(cap, rng);
}

/// Components outside [L, U] move to the midpoint between the bound and the parent.
inline Vector repair_bounds(std::span<const double> y, std::span<const double> parent,
                            std::span<const double> lower, std::span<const double> upper) {
  Vector out(y.begin(), y.end());
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (out[j] < lower[j]) {
      out[j] = 0.5 * (lower[j] + parent[j]);
    } else if (out[j] > upper[j]) {
      out[j] = 0.5 * (upper[j] + parent[j]);
    }
  }
  return out;
}

}  // namespace heco
