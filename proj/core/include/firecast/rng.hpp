#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace firecast {

/// Seeded random stream. All distributions are generated by explicit
/// algorithms on top of the raw engine (inverse-CDF normals, Marsaglia-Tsang
/// gamma), so a given seed reproduces the same draws on every platform and
/// standard library. Substreams are derived from a master seed and a label so
/// pipeline stages (simulate / fit / forecast) consume independent streams.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  static RngStream derive(std::uint64_t master, std::string_view label);
  static RngStream derive(std::uint64_t master, std::string_view label,
                          std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform01();
  double uniform(double a, double b);
  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal via inverse CDF.
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Gamma(shape, 1).
  double gamma(double shape);
  double chi_squared(double df) { return 2.0 * gamma(0.5 * df); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace firecast
