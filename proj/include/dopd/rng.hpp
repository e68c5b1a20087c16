#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Counter-based stream derivation: every random quantity in a run is drawn
// from a stream keyed by (master seed, purpose, entity, round), so replaying
// any part of a run never requires storing the realizations.
namespace dopd::rng {

inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Stream : std::uint64_t {
  graph = 1,
  sphere,
  init,
  compressor,
  target,
  noise,
  constraint,
  sensor,
  misc,
};

inline std::mt19937_64 make_stream(std::uint64_t seed, Stream s,
                                   std::uint64_t entity, std::uint64_t t) {
  std::uint64_t h = mix(seed ^ mix(static_cast<std::uint64_t>(s)));
  h = mix(h ^ mix(entity));
  h = mix(h ^ mix(t));
  return std::mt19937_64(h);
}

// Hand-rolled draws: the std:: distributions are implementation-defined,
// which would break byte-identical logs across standard libraries.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

inline bool bernoulli(std::mt19937_64& g, double p) {
  return uniform01(g) < p;
}

// Marsaglia polar method; consumes a variable number of draws from g.
inline double normal(std::mt19937_64& g) {
  for (;;) {
    double a = 2.0 * uniform01(g) - 1.0;
    double b = 2.0 * uniform01(g) - 1.0;
    double s = a * a + b * b;
    if (s > 0.0 && s < 1.0) {
      return a * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

}  // namespace dopd::rng
