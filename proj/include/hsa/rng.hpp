#pragma once

#include <cstdint>
#include <random>

#include "hsa/field.hpp"

namespace hsa {

/// Seeded deterministic generator. Wraps std::mt19937_64 (the engine output
/// is fully specified by the standard) and does its own rejection sampling,
/// so identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  /// Independent substream: same (seed, tag) always yields the same stream.
  Rng stream(uint64_t tag) const { return Rng(mix(seed_ ^ mix(tag))); }

  uint64_t seed() const { return seed_; }

  uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, n) by rejection; n > 0.
  uint32_t below(uint32_t n);

  uint32_t field_element(const PrimeField& f) { return below(f.q()); }

 private:
  static uint64_t mix(uint64_t x);

  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace hsa
