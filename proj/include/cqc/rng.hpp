#pragma once

// Keyed random streams. Every sample of a run gets its own generator,
// derived from (master seed, key path), so records are reproducible in
// isolation and parallel execution is bit-identical to serial.

#include <cstdint>
#include <complex>
#include <initializer_list>
#include <random>

namespace cqc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Stream for a specific draw of a run: hash-chains the key path into the
  // master seed. Any permutation of work across threads sees the same bits.
  static RandomStream keyed(std::uint64_t master,
                            std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t k : path) h = splitmix64(h ^ splitmix64(k));
    RandomStream s(0);
    s.engine_.seed(h);
    return s;
  }

  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  double normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  double exponential() {
    return std::exponential_distribution<double>(1.0)(engine_);
  }

  double log_uniform(double lo, double hi) {
    const double u = uniform();
    return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cqc
