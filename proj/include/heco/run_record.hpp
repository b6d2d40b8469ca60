#pragma once

#include <optional>
#include <vector>

#include "heco/problem.hpp"

namespace heco {

/// Best-so-far sample taken after initialisation and after every generation.
struct TracePoint {
  long fes = 0;
  double best_f = 0.0;
  double best_v = 0.0;
};

struct RunRecord {
  std::optional<EvaluatedPoint> best_feasible;
  /// Least violation seen, ties broken by f.
  EvaluatedPoint best_any;
  std::vector<TracePoint> trace;
  std::vector<EvaluatedPoint> final_population;
  long consumed_fes = 0;
  long generations = 0;

  /// The run's reported solution: best feasible if any, else least violating.
  const EvaluatedPoint& best() const { return best_feasible ? *best_feasible : best_any; }
};

/// Folds every evaluated point of a run into the best-so-far state.
class BestTracker {
 public:
  void observe(const EvaluatedPoint& p) {
    if (!seen_ || p.v < best_any_.v || (p.v == best_any_.v && p.f < best_any_.f)) {
      best_any_ = p;
      seen_ = true;
    }
    if (p.feasible() && (!best_feasible_ || p.f < best_feasible_->f)) best_feasible_ = p;
  }

  bool empty() const { return !seen_; }
  const EvaluatedPoint& best_any() const { return best_any_; }
  const std::optional<EvaluatedPoint>& best_feasible() const { return best_feasible_; }

  TracePoint sample(long fes) const { return {fes, best_any_.f, best_any_.v}; }

  void finish(RunRecord& record) const {
    record.best_any = best_any_;
    record.best_feasible = best_feasible_;
  }

 private:
  bool seen_ = false;
  EvaluatedPoint best_any_;
  std::optional<EvaluatedPoint> best_feasible_;
};

}  // namespace heco
