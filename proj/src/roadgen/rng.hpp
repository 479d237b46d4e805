#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace roadgen {

// Seeded random stream threaded explicitly through generation.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distributions below are written out here because the
// standard library's distributions are implementation-defined, and batches
// must be reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform01();
  // Uniform in [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi);
  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);
  bool bernoulli(double p);

  // Derives an independent child stream; advances this stream by one draw.
  Rng split();

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace roadgen
