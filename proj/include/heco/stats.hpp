#pragma once

// Competition-style reporting: per-problem run statistics, the success rule,
// rank values by mean and by median, and the average convergence rate.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "heco/problem.hpp"
#include "heco/run_record.hpp"

namespace heco {

/// Final outcome of one run reduced to what reporting needs.
struct RunSummary {
  double f = 0.0;
  double v = 0.0;
  double mean_violation = 0.0;
  /// Violated-constraint counts with violation > 1, in [0.01, 1], in [1e-4, 0.01).
  std::array<int, 3> violated{};

  bool feasible() const { return v == 0.0; }
};

inline RunSummary summarize(const EvaluatedPoint& p) {
  RunSummary s;
  s.f = p.f;
  s.v = p.v;
  s.mean_violation = p.mean_violation();
  auto count = [&s](double vi) {
    if (vi > 1.0) {
      ++s.violated[0];
    } else if (vi >= 0.01) {
      ++s.violated[1];
    } else if (vi >= 1e-4) {
      ++s.violated[2];
    }
  };
  for (double vi : p.ineq_violation) count(vi);
  for (double vi : p.eq_violation) count(vi);
  return s;
}

inline RunSummary summarize(const RunRecord& r) { return summarize(r.best()); }

/// Feasible before infeasible; feasible by f; infeasible by mean violation.
/// Returns -1, 0 or 1.
inline int cec_compare(const RunSummary& a, const RunSummary& b) {
  if (a.feasible() != b.feasible()) return a.feasible() ? -1 : 1;
  const double ka = a.feasible() ? a.f : a.mean_violation;
  const double kb = b.feasible() ? b.f : b.mean_violation;
  return ka < kb ? -1 : (kb < ka ? 1 : 0);
}

struct ProblemStats {
  std::string problem;
  std::string algorithm;
  double best = 0.0;
  double median = 0.0;
  double worst = 0.0;
  double mean = 0.0;
  double std = 0.0;
  /// Percentage of runs that ended feasible.
  double sr = 0.0;
  std::array<int, 3> c{};
  /// Mean violation of the median run.
  double vbar = 0.0;
  /// Mean violation averaged over all runs.
  double mean_vio = 0.0;

  bool median_feasible() const { return vbar == 0.0; }
};

inline ProblemStats aggregate_stats(std::span<const RunSummary> runs, std::string problem = {},
                                    std::string algorithm = {}) {
  if (runs.empty()) throw ConfigError("cannot aggregate statistics over zero runs");
  std::vector<RunSummary> sorted(runs.begin(), runs.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RunSummary& a, const RunSummary& b) { return cec_compare(a, b) < 0; });

  const std::size_t n = sorted.size();
  const RunSummary& med = sorted[(n + 1) / 2 - 1];
  ProblemStats s;
  s.problem = std::move(problem);
  s.algorithm = std::move(algorithm);
  s.best = sorted.front().f;
  s.median = med.f;
  s.worst = sorted.back().f;
  s.c = med.violated;
  s.vbar = med.mean_violation;

  double sum = 0.0, vio = 0.0;
  std::size_t feasible = 0;
  for (const auto& r : runs) {
    sum += r.f;
    vio += r.mean_violation;
    if (r.feasible()) ++feasible;
  }
  s.mean = sum / static_cast<double>(n);
  s.mean_vio = vio / static_cast<double>(n);
  s.sr = 100.0 * static_cast<double>(feasible) / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (const auto& r : runs) ss += (r.f - s.mean) * (r.f - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

inline ProblemStats aggregate_stats(std::span<const RunRecord> records, std::string problem = {},
                                    std::string algorithm = {}) {
  std::vector<RunSummary> runs;
  runs.reserve(records.size());
  for (const auto& r : records) runs.push_back(summarize(r));
  return aggregate_stats(runs, std::move(problem), std::move(algorithm));
}

inline constexpr double kSuccessTolerance = 1e-4;

/// A run succeeds when its best feasible f is within 1e-4 above f*.
inline bool cec2006_success(const RunRecord& record, double f_star,
                            double tolerance = kSuccessTolerance) {
  return record.best_feasible && record.best_feasible->f - f_star <= tolerance;
}

// ---------------------------------------------------------------------------
// Ranking

inline constexpr double kRankPrecision = 1e-8;

struct RankTable {
  std::vector<std::string> algorithms;
  std::vector<std::string> problems;
  /// [algorithm][problem]
  std::vector<std::vector<int>> by_mean;
  std::vector<std::vector<int>> by_median;
  std::vector<int> totals;
};

namespace detail {

/// -1 / 0 / 1 with values within `precision` treated as equal.
inline int compare_within(double a, double b, double precision) {
  if (std::abs(a - b) <= precision) return 0;
  return a < b ? -1 : 1;
}

/// By mean: higher feasibility rate, then lower mean violation, then lower mean.
inline int compare_by_mean(const ProblemStats& a, const ProblemStats& b) {
  if (int c = compare_within(b.sr, a.sr, kRankPrecision)) return c;
  if (int c = compare_within(a.mean_vio, b.mean_vio, kRankPrecision)) return c;
  return compare_within(a.mean, b.mean, kRankPrecision);
}

/// By median: feasible median first, then f (feasible) or violation (infeasible).
inline int compare_by_median(const ProblemStats& a, const ProblemStats& b) {
  if (a.median_feasible() != b.median_feasible()) return a.median_feasible() ? -1 : 1;
  if (a.median_feasible()) return compare_within(a.median, b.median, kRankPrecision);
  return compare_within(a.vbar, b.vbar, kRankPrecision);
}

/// rank(a) = 1 + number of entries strictly better than a; ties share the lowest rank.
template <typename Compare>
std::vector<int> competition_ranks(const std::vector<const ProblemStats*>& cells, Compare cmp) {
  std::vector<int> ranks(cells.size(), 1);
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = 0; b < cells.size(); ++b)
      if (b != a && cmp(*cells[b], *cells[a]) < 0) ++ranks[a];
  return ranks;
}

}  // namespace detail

/**
 * Ranks every algorithm on every problem twice (by mean, by median) and sums
 * both into a total per algorithm. Throws ConfigError when an
 * (algorithm, problem) cell is missing or duplicated.
 */
inline RankTable rank_algorithms(std::span<const ProblemStats> stats) {
  std::set<std::string> algs, probs;
  std::map<std::pair<std::string, std::string>, const ProblemStats*> cell;
  for (const auto& s : stats) {
    algs.insert(s.algorithm);
    probs.insert(s.problem);
    if (!cell.emplace(std::make_pair(s.algorithm, s.problem), &s).second)
      throw ConfigError("duplicate statistics for " + s.algorithm + " on " + s.problem);
  }
  RankTable t;
  t.algorithms.assign(algs.begin(), algs.end());
  t.problems.assign(probs.begin(), probs.end());
  std::string missing;
  for (const auto& a : t.algorithms)
    for (const auto& p : t.problems)
      if (!cell.count({a, p})) missing += " " + a + "/" + p;
  if (!missing.empty()) throw ConfigError("missing statistics cells:" + missing);

  const std::size_t na = t.algorithms.size(), np = t.problems.size();
  t.by_mean.assign(na, std::vector<int>(np, 0));
  t.by_median.assign(na, std::vector<int>(np, 0));
  t.totals.assign(na, 0);
  for (std::size_t p = 0; p < np; ++p) {
    std::vector<const ProblemStats*> column(na);
    for (std::size_t a = 0; a < na; ++a) column[a] = cell.at({t.algorithms[a], t.problems[p]});
    const auto mean_ranks = detail::competition_ranks(column, detail::compare_by_mean);
    const auto median_ranks = detail::competition_ranks(column, detail::compare_by_median);
    for (std::size_t a = 0; a < na; ++a) {
      t.by_mean[a][p] = mean_ranks[a];
      t.by_median[a][p] = median_ranks[a];
      t.totals[a] += mean_ranks[a] + median_ranks[a];
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Convergence rate

/// R_t = 1 - |(f_t - f*) / (f_0 - f*)|^(1/t) for t = 1..values.size().
inline std::vector<double> convergence_rate_series(std::span<const double> values, double f0,
                                                   double f_star) {
  if (f0 == f_star) throw ContractViolation("convergence rate undefined when f0 equals f*");
  std::vector<double> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double ratio = std::abs((values[k] - f_star) / (f0 - f_star));
    out[k] = 1.0 - std::pow(ratio, 1.0 / static_cast<double>(k + 1));
  }
  return out;
}

}  // namespace heco
