#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>

namespace heco {

/// Variate source used by every stochastic operator. Tests plug in stubs.
template <typename R>
concept VariateSource = requires(R& r, double a, double b, std::size_t n) {
  { r.uniform() } -> std::convertible_to<double>;
  { r.uniform(a, b) } -> std::convertible_to<double>;
  { r.normal(a, b) } -> std::convertible_to<double>;
  { r.cauchy(a, b) } -> std::convertible_to<double>;
  { r.index(n) } -> std::convertible_to<std::size_t>;
};

/// Seeded 64-bit Mersenne twister with the draws the DE operators need.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform() {
    double u;
    do {
      u = unit_(engine_);
    } while (u == 0.0);
    return u;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }

  double normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

  double cauchy(double location, double scale) {
    return std::cauchy_distribution<double>(location, scale)(engine_);
  }

  /// Uniform index on [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

static_assert(VariateSource<Random>);

/// Seed of the index-th independent run or trial: base + index.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) { return base + index; }

}  // namespace heco
