#pragma once

// CSV and JSON encodings of traces, statistics, rank tables and hitting times.
// Floats use 17 significant digits and '.' as decimal separator regardless of locale.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "heco/baselines.hpp"
#include "heco/problem.hpp"
#include "heco/run_record.hpp"
#include "heco/stats.hpp"

namespace heco::io {

using Json = nlohmann::ordered_json;

/// Thrown for malformed input files.
struct FormatError : Error {
  using Error::Error;
};

inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw FormatError("not a number: '" + std::string(text) + "'");
  return value;
}

inline long parse_long(std::string_view text) {
  long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw FormatError("not an integer: '" + std::string(text) + "'");
  return value;
}

inline std::vector<std::string> split(std::string_view line, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Traces

inline void write_trace_csv(std::ostream& os, std::span<const TracePoint> trace) {
  os << "fes,best_f,best_v\n";
  for (const auto& p : trace)
    os << p.fes << ',' << format_double(p.best_f) << ',' << format_double(p.best_v) << '\n';
}

// ---------------------------------------------------------------------------
// Statistics

inline constexpr std::string_view kStatsHeader =
    "problem,algorithm,best,median,worst,mean,std,SR,c1,c2,c3,vbar,mean_vio";

inline void write_stats_csv(std::ostream& os, std::span<const ProblemStats> stats) {
  os << kStatsHeader << '\n';
  for (const auto& s : stats) {
    os << s.problem << ',' << s.algorithm << ',' << format_double(s.best) << ','
       << format_double(s.median) << ',' << format_double(s.worst) << ','
       << format_double(s.mean) << ',' << format_double(s.std) << ',' << format_double(s.sr)
       << ',' << s.c[0] << ',' << s.c[1] << ',' << s.c[2] << ',' << format_double(s.vbar) << ','
       << format_double(s.mean_vio) << '\n';
  }
}

inline std::vector<ProblemStats> read_stats_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kStatsHeader)
    throw FormatError("statistics file does not start with the expected header");
  std::vector<ProblemStats> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cols = split(line);
    if (cols.size() != 13) throw FormatError("statistics row has the wrong column count: " + line);
    ProblemStats s;
    s.problem = cols[0];
    s.algorithm = cols[1];
    s.best = parse_double(cols[2]);
    s.median = parse_double(cols[3]);
    s.worst = parse_double(cols[4]);
    s.mean = parse_double(cols[5]);
    s.std = parse_double(cols[6]);
    s.sr = parse_double(cols[7]);
    for (int k = 0; k < 3; ++k) s.c[k] = static_cast<int>(parse_long(cols[8 + k]));
    s.vbar = parse_double(cols[11]);
    s.mean_vio = parse_double(cols[12]);
    out.push_back(std::move(s));
  }
  return out;
}

inline Json stats_to_json(std::span<const ProblemStats> stats) {
  Json arr = Json::array();
  for (const auto& s : stats) {
    arr.push_back({{"problem", s.problem},
                   {"algorithm", s.algorithm},
                   {"best", s.best},
                   {"median", s.median},
                   {"worst", s.worst},
                   {"mean", s.mean},
                   {"std", s.std},
                   {"SR", s.sr},
                   {"c1", s.c[0]},
                   {"c2", s.c[1]},
                   {"c3", s.c[2]},
                   {"vbar", s.vbar},
                   {"mean_vio", s.mean_vio}});
  }
  return arr;
}

inline std::vector<ProblemStats> stats_from_json(const Json& arr) {
  if (!arr.is_array()) throw FormatError("statistics JSON must be an array");
  std::vector<ProblemStats> out;
  try {
    for (const auto& o : arr) {
      ProblemStats s;
      s.problem = o.at("problem").get<std::string>();
      s.algorithm = o.at("algorithm").get<std::string>();
      s.best = o.at("best").get<double>();
      s.median = o.at("median").get<double>();
      s.worst = o.at("worst").get<double>();
      s.mean = o.at("mean").get<double>();
      s.std = o.at("std").get<double>();
      s.sr = o.at("SR").get<double>();
      s.c = {o.at("c1").get<int>(), o.at("c2").get<int>(), o.at("c3").get<int>()};
      s.vbar = o.at("vbar").get<double>();
      s.mean_vio = o.at("mean_vio").get<double>();
      out.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed statistics JSON: ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rank tables

inline void write_rank_csv(std::ostream& os, const RankTable& t) {
  os << "algorithm";
  for (const auto& p : t.problems) os << ',' << p << "_mean," << p << "_median";
  os << ",total\n";
  for (std::size_t a = 0; a < t.algorithms.size(); ++a) {
    os << t.algorithms[a];
    for (std::size_t p = 0; p < t.problems.size(); ++p)
      os << ',' << t.by_mean[a][p] << ',' << t.by_median[a][p];
    os << ',' << t.totals[a] << '\n';
  }
}

inline Json rank_to_json(const RankTable& t) {
  Json arr = Json::array();
  for (std::size_t a = 0; a < t.algorithms.size(); ++a) {
    Json ranks = Json::object();
    for (std::size_t p = 0; p < t.problems.size(); ++p)
      ranks[t.problems[p]] = {{"mean", t.by_mean[a][p]}, {"median", t.by_median[a][p]}};
    arr.push_back({{"algorithm", t.algorithms[a]}, {"ranks", ranks}, {"total", t.totals[a]}});
  }
  return arr;
}

// ---------------------------------------------------------------------------
// Hitting times

inline void write_hitting_header(std::ostream& os) { os << "arm,trial,hit_generation,censored\n"; }

/// Censored trials report the generation cap in hit_generation.
inline void write_hitting_rows(std::ostream& os, std::string_view arm,
                               const HittingTimeResult& r, long max_generations) {
  for (std::size_t k = 0; k < r.hit_generation.size(); ++k) {
    const auto& h = r.hit_generation[k];
    os << arm << ',' << k << ',' << (h ? *h : max_generations) << ',' << (h ? 0 : 1) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Hashing

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = kHex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

}  // namespace heco::io
