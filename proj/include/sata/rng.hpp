#pragma once

#include <cstdint>

namespace sata {

// splitmix64 finalizer; also used as a general-purpose 64-bit hash step.
std::uint64_t mix64(std::uint64_t v);

// Counter-based generator: draw i of a stream is mix64(seed + i*gamma),
// so a stream is a pure function of (seed, counter). split() derives an
// independent child stream from (seed, key); adding draws to one consumer
// never shifts the sequence seen by another.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double next_double();

  // Uniform in (0, 1].
  double next_open_closed();

  // Uniform integer in [0, bound). bound must be >= 1.
  int next_int(int bound);

  Rng split(std::uint64_t key) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace sata
