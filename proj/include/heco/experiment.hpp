#pragma once

// Batch experiments: (problem x algorithm x run) cells described by an INI
// spec, executed on a worker pool, reported as traces plus a statistics table.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "heco/baselines.hpp"
#include "heco/heco_solver.hpp"
#include "heco/io.hpp"
#include "heco/parallel.hpp"
#include "heco/problem.hpp"
#include "heco/stats.hpp"

namespace heco {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct SolverSettings {
  int lambda = 20;
  double gamma = 0.1;
  long n0 = 0;
  long n_final = 0;
};

struct ExperimentSpec {
  std::vector<std::string> problems;
  /// HECO-DE, HCO-DE, HECO-DE-FR, SOCO-FR (feasibility rule) or SOCO-DP (death penalty).
  std::vector<std::string> algorithms;
  int runs = 25;
  long fes = 20000;
  std::uint64_t seed = 1;
  std::string output = "results";
  /// csv or json
  std::string format = "csv";
  SolverSettings solver;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (auto item : io::split(text, ',')) {
    boost::algorithm::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? ", " : "") + items[k];
  return out;
}

inline bool is_heco_variant(const std::string& tag) {
  return tag == "HECO-DE" || tag == "HCO-DE" || tag == "HECO-DE-FR";
}

inline bool is_soco(const std::string& tag) { return tag == "SOCO-FR" || tag == "SOCO-DP"; }

}  // namespace detail

/**
 * Reads an experiment spec:
 *
 *   [experiment]
 *   problems = example2, g24
 *   algorithms = HECO-DE, HCO-DE
 *   runs = 25
 *   fes = 20000
 *   seed = 1
 *   output = results
 *   format = csv
 *
 *   [solver]
 *   lambda = 20
 *   gamma = 0.1
 *   n0 = 0
 *   n_final = 0
 *
 * n0 = 0 selects max(12 D, 10 lambda); n_final = 0 selects lambda. Only
 * whole-line ';' comments are accepted.
 */
inline ExperimentSpec parse_experiment_spec(std::istream& is) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed experiment spec: ") + e.what());
  }
  auto read = [&tree]<typename T>(const char* key, T& field) {
    if (const auto text = tree.get_optional<std::string>(key)) {
      const auto parsed = tree.get_optional<T>(key);
      if (!parsed) throw ConfigError(std::string("invalid value for ") + key + ": '" + *text + "'");
      field = *parsed;
    }
  };
  ExperimentSpec spec;
  const auto problems = tree.get_optional<std::string>("experiment.problems");
  if (!problems) throw ConfigError("experiment spec lacks experiment.problems");
  spec.problems = detail::split_list(*problems);
  spec.algorithms = detail::split_list(tree.get<std::string>("experiment.algorithms", "HECO-DE"));
  read("experiment.runs", spec.runs);
  read("experiment.fes", spec.fes);
  read("experiment.seed", spec.seed);
  read("experiment.output", spec.output);
  read("experiment.format", spec.format);
  read("solver.lambda", spec.solver.lambda);
  read("solver.gamma", spec.solver.gamma);
  read("solver.n0", spec.solver.n0);
  read("solver.n_final", spec.solver.n_final);
  return spec;
}

inline ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment spec '" + path.string() + "'");
  return parse_experiment_spec(in);
}

/// Canonical text form; its hash identifies the experiment in output metadata.
inline std::string to_ini(const ExperimentSpec& spec) {
  std::ostringstream os;
  os << "[experiment]\n"
     << "problems = " << detail::join(spec.problems) << '\n'
     << "algorithms = " << detail::join(spec.algorithms) << '\n'
     << "runs = " << spec.runs << '\n'
     << "fes = " << spec.fes << '\n'
     << "seed = " << spec.seed << '\n'
     << "output = " << spec.output << '\n'
     << "format = " << spec.format << '\n'
     << "\n[solver]\n"
     << "lambda = " << spec.solver.lambda << '\n'
     << "gamma = " << io::format_double(spec.solver.gamma) << '\n'
     << "n0 = " << spec.solver.n0 << '\n'
     << "n_final = " << spec.solver.n_final << '\n';
  return os.str();
}

inline void validate(const ExperimentSpec& spec, const ProblemRegistry& registry) {
  std::string problems;
  for (const auto& p : spec.problems)
    if (!registry.contains(p)) problems += " " + p;
  if (!problems.empty()) throw ConfigError("unknown problem(s):" + problems);
  std::string algs;
  for (const auto& a : spec.algorithms)
    if (!detail::is_heco_variant(a) && !detail::is_soco(a)) algs += " " + a;
  if (!algs.empty()) throw ConfigError("unknown algorithm(s):" + algs);
  if (spec.problems.empty()) throw ConfigError("experiment lists no problems");
  if (spec.algorithms.empty()) throw ConfigError("experiment lists no algorithms");
  if (spec.runs < 1) throw ConfigError("runs must be at least 1");
  if (spec.format != "csv" && spec.format != "json")
    throw ConfigError("format must be csv or json, got '" + spec.format + "'");
}

/// One run of `algorithm` on `problem`, seeded with spec.seed + run_index.
inline RunRecord run_algorithm(const std::string& algorithm, const ConstrainedProblem& problem,
                               const ExperimentSpec& spec, int run_index) {
  const std::uint64_t seed = derive_seed(spec.seed, static_cast<std::uint64_t>(run_index));
  if (detail::is_soco(algorithm)) {
    SocoConfig cfg;
    cfg.fes_max = spec.fes;
    cfg.seed = seed;
    cfg.equivalent = algorithm == "SOCO-DP" ? EquivalentFunction::DeathPenalty
                                            : EquivalentFunction::FeasibilityRule;
    return run_soco_generic(problem, cfg);
  }
  RunConfig cfg;
  cfg.fes_max = spec.fes;
  cfg.n0 = spec.solver.n0;
  cfg.n_final = spec.solver.n_final;
  cfg.lambda = spec.solver.lambda;
  cfg.gamma = spec.solver.gamma;
  cfg.seed = seed;
  cfg.variant = parse_variant(algorithm);
  return run_variant(problem, cfg);
}

struct CellFailure {
  std::string problem;
  std::string algorithm;
  int run = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<ProblemStats> stats;
  std::vector<CellFailure> failures;
  std::vector<std::filesystem::path> files;

  bool ok() const { return failures.empty(); }
};

/// Writes `content` next to `path` and renames it into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

inline io::Json metadata_json(const std::string& file, const std::string& spec_hash,
                              std::uint64_t seed) {
  return {{"file", file},
          {"spec_hash", spec_hash},
          {"seed", seed},
          {"library_version", kLibraryVersion}};
}

/// Writes `<path>.meta.json` describing `path`.
inline std::filesystem::path write_metadata(const std::filesystem::path& path,
                                            const std::string& spec_hash, std::uint64_t seed) {
  auto meta = path;
  meta += ".meta.json";
  write_atomic(meta, metadata_json(path.filename().string(), spec_hash, seed).dump(2) + "\n");
  return meta;
}

inline std::string trace_file_name(const std::string& problem, const std::string& algorithm,
                                   int run) {
  std::ostringstream os;
  os << problem << "__" << algorithm << "__run";
  os.width(3);
  os.fill('0');
  os << run << ".csv";
  return os.str();
}

/**
 * Runs every (problem, algorithm, run) cell of `spec` on `jobs` threads and,
 * when `out_dir` is non-empty, writes one trace CSV per run under
 * out_dir/traces plus the statistics table (stats.csv or stats.json) with
 * metadata. Failed cells are reported in the result and excluded from the
 * statistics of their (problem, algorithm) pair.
 */
inline ExperimentResult run_experiment(const ExperimentSpec& spec, const ProblemRegistry& registry,
                                       unsigned jobs, const std::filesystem::path& out_dir) {
  validate(spec, registry);
  namespace fs = std::filesystem;
  const std::string spec_hash = io::fnv1a_hex(to_ini(spec));
  const bool write = !out_dir.empty();
  if (write) fs::create_directories(out_dir / "traces");

  struct Cell {
    std::size_t problem, algorithm;
    int run;
  };
  std::vector<Cell> cells;
  for (std::size_t p = 0; p < spec.problems.size(); ++p)
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a)
      for (int r = 0; r < spec.runs; ++r) cells.push_back({p, a, r});

  std::vector<RunSummary> summaries(cells.size());
  const auto errors = parallel_for(cells.size(), jobs, [&](std::size_t i) {
    const Cell& c = cells[i];
    const auto& problem = registry.at(spec.problems[c.problem]);
    const RunRecord record = run_algorithm(spec.algorithms[c.algorithm], problem, spec, c.run);
    summaries[i] = summarize(record);
    if (write) {
      std::ostringstream os;
      io::write_trace_csv(os, record.trace);
      write_atomic(out_dir / "traces" /
                       trace_file_name(problem.name, spec.algorithms[c.algorithm], c.run),
                   os.str());
    }
  });

  ExperimentResult result;
  std::vector<bool> failed(cells.size(), false);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!errors[i]) continue;
    failed[i] = true;
    CellFailure f{spec.problems[cells[i].problem], spec.algorithms[cells[i].algorithm],
                  cells[i].run, {}};
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      f.message = e.what();
    } catch (...) {
      f.message = "unknown error";
    }
    result.failures.push_back(std::move(f));
  }

  for (std::size_t p = 0; p < spec.problems.size(); ++p) {
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      std::vector<RunSummary> runs;
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].problem == p && cells[i].algorithm == a && !failed[i])
          runs.push_back(summaries[i]);
      if (runs.empty()) continue;
      result.stats.push_back(aggregate_stats(runs, spec.problems[p], spec.algorithms[a]));
    }
  }

  if (write) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!failed[i])
        result.files.push_back(out_dir / "traces" /
                               trace_file_name(spec.problems[cells[i].problem],
                                               spec.algorithms[cells[i].algorithm], cells[i].run));
    const auto traces_meta = out_dir / "traces" / "metadata.json";
    write_atomic(traces_meta, metadata_json("traces/*.csv", spec_hash, spec.seed).dump(2) + "\n");
    result.files.push_back(traces_meta);

    std::string body;
    fs::path stats_path;
    if (spec.format == "json") {
      stats_path = out_dir / "stats.json";
      body = io::stats_to_json(result.stats).dump(2) + "\n";
    } else {
      stats_path = out_dir / "stats.csv";
      std::ostringstream os;
      io::write_stats_csv(os, result.stats);
      body = os.str();
    }
    write_atomic(stats_path, body);
    result.files.push_back(stats_path);
    result.files.push_back(write_metadata(stats_path, spec_hash, spec.seed));
  }
  return result;
}

}  // namespace heco
