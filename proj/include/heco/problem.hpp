#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heco {

using Vector = std::vector<double>;
using ScalarFunction = std::function<double(std::span<const double>)>;

/// Base of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (e.g. a point outside the box).
struct ContractViolation : Error {
  using Error::Error;
};

/// Invalid run or experiment configuration.
struct ConfigError : Error {
  using Error::Error;
};

/// Objective or constraint produced a non-finite value.
struct EvaluationError : Error {
  enum class Source { Objective, Inequality, Equality };

  EvaluationError(Source source, std::size_t index, const std::string& what)
      : Error(what), source(source), index(index) {}

  Source source;
  std::size_t index;
};

/// Default tolerance for equality constraints, |h(x)| <= eps counts as satisfied.
inline constexpr double kDefaultEqualityTolerance = 1e-4;

/**
 * Box-bounded minimisation problem with inequality constraints g(x) <= 0 and
 * equality constraints h(x) = 0.
 *
 * Instances are immutable once handed to a solver and may be shared across
 * concurrent runs; every function held here must be pure.
 */
struct ConstrainedProblem {
  std::string name;
  Vector lower;
  Vector upper;
  ScalarFunction objective;
  std::vector<ScalarFunction> inequalities;
  std::vector<ScalarFunction> equalities;
  double eq_tolerance = kDefaultEqualityTolerance;
  std::optional<double> known_optimum;
  /// A point attaining known_optimum, when one is published.
  std::optional<Vector> known_solution;

  std::size_t dim() const { return lower.size(); }
  std::size_t num_constraints() const { return inequalities.size() + equalities.size(); }

  bool contains(std::span<const double> x) const {
    if (x.size() != dim()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!(x[j] >= lower[j] && x[j] <= upper[j])) return false;
    }
    return true;
  }

  void validate() const {
    if (name.empty()) throw ConfigError("problem has no name");
    if (lower.empty()) throw ConfigError("problem '" + name + "' has dimension 0");
    if (lower.size() != upper.size())
      throw ConfigError("problem '" + name + "' has mismatched bound lengths");
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || !(lower[j] < upper[j]))
        throw ConfigError("problem '" + name + "' has invalid bounds at index " +
                          std::to_string(j));
    }
    if (!objective) throw ConfigError("problem '" + name + "' has no objective");
    if (!(eq_tolerance >= 0.0)) throw ConfigError("problem '" + name + "' has negative tolerance");
  }
};

/// A decision vector together with its objective value and violation degrees.
struct EvaluatedPoint {
  Vector x;
  double f = 0.0;
  Vector ineq_violation;
  Vector eq_violation;
  double v = 0.0;

  bool feasible() const { return v == 0.0; }

  /// Mean violation over all constraints (0 for an unconstrained problem).
  double mean_violation() const {
    const std::size_t m = ineq_violation.size() + eq_violation.size();
    return m == 0 ? 0.0 : v / static_cast<double>(m);
  }
};

inline bool is_feasible(const EvaluatedPoint& p) { return p.v == 0.0; }

/**
 * Evaluates f and the violation degrees at x.
 *
 * vI_i = max(0, g_i(x)), vE_i = max(0, |h_i(x)| - eps), v = sum of both.
 * Throws ContractViolation when x lies outside the box and EvaluationError
 * when any value is not finite.
 */
inline EvaluatedPoint evaluate(const ConstrainedProblem& problem, std::span<const double> x) {
  if (!problem.contains(x)) {
    throw ContractViolation("point outside the bounds of problem '" + problem.name + "'");
  }
  EvaluatedPoint p;
  p.x.assign(x.begin(), x.end());
  p.f = problem.objective(x);
  if (!std::isfinite(p.f)) {
    throw EvaluationError(EvaluationError::Source::Objective, 0,
                          "non-finite objective in problem '" + problem.name + "'");
  }
  p.ineq_violation.resize(problem.inequalities.size());
  for (std::size_t i = 0; i < problem.inequalities.size(); ++i) {
    const double g = problem.inequalities[i](x);
    if (!std::isfinite(g)) {
      throw EvaluationError(EvaluationError::Source::Inequality, i,
                            "non-finite inequality constraint " + std::to_string(i) +
                                " in problem '" + problem.name + "'");
    }
    p.ineq_violation[i] = std::max(0.0, g);
  }
  p.eq_violation.resize(problem.equalities.size());
  for (std::size_t i = 0; i < problem.equalities.size(); ++i) {
    const double h = problem.equalities[i](x);
    if (!std::isfinite(h)) {
      throw EvaluationError(EvaluationError::Source::Equality, i,
                            "non-finite equality constraint " + std::to_string(i) +
                                " in problem '" + problem.name + "'");
    }
    p.eq_violation[i] = std::max(0.0, std::abs(h) - problem.eq_tolerance);
  }
  p.v = std::accumulate(p.ineq_violation.begin(), p.ineq_violation.end(), 0.0) +
        std::accumulate(p.eq_violation.begin(), p.eq_violation.end(), 0.0);
  return p;
}

/// Wraps a problem and counts objective evaluations (FES).
class Evaluator {
 public:
  explicit Evaluator(const ConstrainedProblem& problem) : problem_(&problem) {}

  EvaluatedPoint operator()(std::span<const double> x) {
    EvaluatedPoint p = evaluate(*problem_, x);
    ++count_;
    return p;
  }

  const ConstrainedProblem& problem() const { return *problem_; }
  long count() const { return count_; }

 private:
  const ConstrainedProblem* problem_;
  long count_ = 0;
};

/// Name-indexed collection of problems. Lookup of an unknown name throws ConfigError.
class ProblemRegistry {
 public:
  using Factory = std::function<ConstrainedProblem()>;

  void add(ConstrainedProblem problem) {
    problem.validate();
    auto shared = std::make_shared<const ConstrainedProblem>(std::move(problem));
    const std::string key = shared->name;
    problems_[key] = std::move(shared);
  }

  void add(const Factory& factory) { add(factory()); }

  bool contains(const std::string& name) const { return problems_.count(name) != 0; }

  const ConstrainedProblem& at(const std::string& name) const {
    auto it = problems_.find(name);
    if (it == problems_.end()) throw ConfigError("unknown problem '" + name + "'");
    return *it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(problems_.size());
    for (const auto& [name, _] : problems_) out.push_back(name);
    return out;
  }

 private:
  std::map<std::string, std::shared_ptr<const ConstrainedProblem>> problems_;
};

}  // namespace heco
