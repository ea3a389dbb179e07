#include "firecast/rng.hpp"

#include <cmath>

#include "firecast/errors.hpp"
#include "firecast/stats.hpp"

namespace firecast {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed) {
  std::uint64_t s = seed;
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)),
                    static_cast<std::uint32_t>(splitmix64(s)),
                    static_cast<std::uint32_t>(splitmix64(s)),
                    static_cast<std::uint32_t>(splitmix64(s)),
                    static_cast<std::uint32_t>(splitmix64(s)),
                    static_cast<std::uint32_t>(splitmix64(s))};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : engine_(make_engine(seed)) {}

RngStream RngStream::derive(std::uint64_t master, std::string_view label) {
  std::uint64_t s = master ^ fnv1a64(label);
  splitmix64(s);
  return RngStream(s);
}

RngStream RngStream::derive(std::uint64_t master, std::string_view label,
                            std::uint64_t index) {
  std::uint64_t s = master ^ fnv1a64(label);
  s ^= 0x9E3779B97F4A7C15ull * (index + 1);
  splitmix64(s);
  return RngStream(s);
}

double RngStream::uniform01() {
  // 53 random bits, offset by half an ulp so 0 and 1 are unreachable.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * (1.0 / 9007199254740992.0);
}

double RngStream::uniform(double a, double b) {
  if (!(a < b)) throw DataError("uniform: empty interval");
  return a + (b - a) * uniform01();
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw DataError("uniform_index: n must be positive");
  // Rejection-free would bias; rejection loop keeps exact uniformity.
  const std::uint64_t limit = ~0ull - (~0ull % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double RngStream::normal() { return normal_quantile(uniform01()); }

double RngStream::gamma(double shape) {
  if (shape <= 0.0) throw DataError("gamma: shape must be positive");
  if (shape < 1.0) {
    const double u = uniform01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  while (true) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace firecast
