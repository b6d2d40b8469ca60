// heco: run constrained-optimisation experiments, rank algorithms, and
// reproduce the wide-gap hitting-time study.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heco/heco.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& spec_path, unsigned jobs, const std::optional<std::uint64_t>& seed,
            const std::optional<std::string>& out, const std::optional<std::string>& format) {
  heco::ExperimentSpec spec = heco::load_experiment_spec(spec_path);
  if (seed) spec.seed = *seed;
  if (out) spec.output = *out;
  if (format) spec.format = *format;

  const auto registry = heco::benchmarks::builtin_problems();
  const auto result = heco::run_experiment(spec, registry, jobs, spec.output);

  for (const auto& s : result.stats) {
    std::cout << s.problem << " " << s.algorithm << ": best " << heco::io::format_double(s.best)
              << ", median " << heco::io::format_double(s.median) << ", SR " << s.sr << "%\n";
  }
  std::cout << "wrote " << result.files.size() << " files to " << spec.output << "\n";
  if (!result.ok()) {
    std::cerr << result.failures.size() << " cell(s) failed:\n";
    for (const auto& f : result.failures)
      std::cerr << "  " << f.problem << " " << f.algorithm << " run " << f.run << ": " << f.message
                << "\n";
    return 1;
  }
  return 0;
}

std::vector<heco::ProblemStats> load_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw heco::ConfigError("cannot open statistics file '" + path + "'");
  if (fs::path(path).extension() == ".json") {
    heco::io::Json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw heco::io::FormatError("'" + path + "': " + e.what());
    }
    return heco::io::stats_from_json(j);
  }
  return heco::io::read_stats_csv(in);
}

/// Throws when algorithms were evaluated on different problem sets.
void check_common_problems(const std::vector<heco::ProblemStats>& stats) {
  std::map<std::string, std::set<std::string>> by_alg;
  std::set<std::string> all;
  for (const auto& s : stats) {
    by_alg[s.algorithm].insert(s.problem);
    all.insert(s.problem);
  }
  if (by_alg.size() < 2) throw heco::ConfigError("ranking needs at least two algorithms");
  std::string diff;
  for (const auto& [alg, probs] : by_alg)
    for (const auto& p : all)
      if (!probs.count(p)) diff += "\n  " + alg + " has no result for " + p;
  if (!diff.empty()) throw heco::ConfigError("problem sets differ:" + diff);
}

int cmd_rank(const std::vector<std::string>& files, const std::optional<std::string>& out,
             const std::string& format) {
  std::vector<heco::ProblemStats> stats;
  for (const auto& f : files) {
    auto part = load_stats(f);
    stats.insert(stats.end(), part.begin(), part.end());
  }
  check_common_problems(stats);
  const auto table = heco::rank_algorithms(stats);

  std::ostringstream body;
  if (format == "json") {
    body << heco::io::rank_to_json(table).dump(2) << "\n";
  } else {
    heco::io::write_rank_csv(body, table);
  }
  if (!out) {
    std::cout << body.str();
    return 0;
  }
  fs::create_directories(*out);
  const fs::path path = fs::path(*out) / (format == "json" ? "rank.json" : "rank.csv");
  heco::write_atomic(path, body.str());
  std::string inputs;
  for (const auto& f : files) inputs += f + "\n";
  heco::write_metadata(path, heco::io::fnv1a_hex(inputs), 0);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_widegap(int trials, long max_generations, std::uint64_t seed,
                const std::optional<std::string>& out) {
  heco::WideGapConfig cfg;
  cfg.trials = trials;
  cfg.max_generations = max_generations;
  cfg.seed = seed;
  const auto soco = heco::run_soco_elitist(cfg);
  const auto heco_arm = heco::run_heco_two_weight(cfg);

  std::ostringstream body;
  heco::io::write_hitting_header(body);
  heco::io::write_hitting_rows(body, "SOCO", soco, max_generations);
  heco::io::write_hitting_rows(body, "HECO", heco_arm, max_generations);

  auto report = [](const char* arm, const heco::HittingTimeResult& r) {
    std::cerr << arm << ": " << r.successes() << "/" << r.hit_generation.size() << " hits";
    if (auto m = r.median()) std::cerr << ", median hitting generation " << *m;
    std::cerr << "\n";
  };
  report("SOCO", soco);
  report("HECO", heco_arm);

  if (!out) {
    std::cout << body.str();
    return 0;
  }
  fs::create_directories(*out);
  const fs::path path = fs::path(*out) / "widegap.csv";
  heco::write_atomic(path, body.str());
  std::ostringstream args;
  args << "trials=" << trials << "\nmax_generations=" << max_generations << "\nseed=" << seed
       << "\n";
  heco::write_metadata(path, heco::io::fnv1a_hex(args.str()), seed);
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_list_problems() {
  const auto registry = heco::benchmarks::builtin_problems();
  std::cout << "name,D,inequalities,equalities,f_star\n";
  for (const auto& name : registry.names()) {
    const auto& p = registry.at(name);
    std::cout << p.name << ',' << p.dim() << ',' << p.inequalities.size() << ','
              << p.equalities.size() << ','
              << (p.known_optimum ? heco::io::format_double(*p.known_optimum) : "") << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helper-and-equivalent-objective differential evolution experiments"};
  app.require_subcommand(1);

  std::string spec_path;
  unsigned jobs = 0;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::string> run_out, run_format;
  auto* run = app.add_subcommand("run", "Run every (problem, algorithm, run) cell of a spec");
  run->add_option("--spec", spec_path, "Experiment spec (INI)")->required()->check(CLI::ExistingFile);
  run->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  run->add_option("--seed", run_seed, "Override the base seed");
  run->add_option("--out", run_out, "Override the output directory");
  run->add_option("--format", run_format, "Statistics format")->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> rank_files;
  std::optional<std::string> rank_out;
  std::string rank_format = "csv";
  auto* rank = app.add_subcommand("rank", "Rank algorithms from statistics files");
  rank->add_option("files", rank_files, "Statistics files (CSV or JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  rank->add_option("--out", rank_out, "Output directory (default: stdout)");
  rank->add_option("--format", rank_format, "Rank table format")
      ->check(CLI::IsMember({"csv", "json"}));

  int trials = 50;
  long max_generations = 100000;
  std::uint64_t gap_seed = 1;
  std::optional<std::string> gap_out;
  auto* widegap = app.add_subcommand("widegap", "Hitting times across the wide gap");
  widegap->add_option("--trials", trials, "Independent trials")->check(CLI::PositiveNumber);
  widegap->add_option("--max-generations", max_generations, "Generation cap per trial")
      ->check(CLI::NonNegativeNumber);
  widegap->add_option("--seed", gap_seed, "Base seed");
  widegap->add_option("--out", gap_out, "Output directory (default: stdout)");

  auto* list = app.add_subcommand("list-problems", "List built-in problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(spec_path, jobs, run_seed, run_out, run_format);
    if (rank->parsed()) return cmd_rank(rank_files, rank_out, rank_format);
    if (widegap->parsed()) return cmd_widegap(trials, max_generations, gap_seed, gap_out);
    if (list->parsed()) return cmd_list_problems();
  } catch (const heco::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
