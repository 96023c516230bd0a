#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace recourse {

/// splitmix64 step; used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic, portable per-column random stream. mt19937_64 output is
/// fully specified by the standard, and the uniform/normal transforms below
/// avoid the implementation-defined std::*_distribution classes, so the same
/// (seed, column) pair yields bit-identical values on any platform.
/// Substreams are independent per column name: adding a column never
/// perturbs the draws of existing columns.
class ColumnRng {
public:
  ColumnRng(std::uint64_t dataset_seed, std::string_view column) {
    std::uint64_t s = dataset_seed ^ fnv1a64(column);
    engine_.seed(splitmix64(s));
  }

  /// Uniform on (0, 1]: never returns 0, safe under log().
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() <= p; }

  /// Standard normal via Box-Muller. One draw consumes two uniforms; the
  /// paired value is discarded to keep the stream position independent of
  /// call history.
  double normal(double mean = 0.0, double sd = 1.0) {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::uint64_t raw() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny next to 2^64 in all uses.
    return engine_() % n;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace recourse
