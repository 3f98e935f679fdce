#pragma once

#include <cstdint>

#include "hsa/errors.hpp"

namespace hsa {

/// Arithmetic context for the prime field F_q. Elements are plain uint32_t
/// values in [0, q); the modulus lives here, never per element, so a value is
/// only meaningful together with the field that produced it.
class PrimeField {
 public:
  /// Throws InvalidOperand unless q is prime (and > 1).
  explicit PrimeField(uint32_t q);

  uint32_t q() const { return q_; }

  uint32_t reduce(uint64_t x) const { return static_cast<uint32_t>(x % q_); }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }

  uint32_t sub(uint32_t a, uint32_t b) const {
    return a >= b ? a - b : a + q_ - b;
  }

  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : q_ - a; }

  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((uint64_t(a) * b) % q_);
  }

  /// Multiplicative inverse; throws InvalidOperand on 0.
  uint32_t inv(uint32_t a) const;

  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

  uint32_t pow(uint32_t base, uint64_t e) const;

 private:
  uint32_t q_;
};

bool is_prime(uint64_t n);

/// Smallest prime >= n; throws SearchExhausted if none below `ceiling`.
uint32_t next_prime_at_least(uint64_t n, uint64_t ceiling = 1u << 30);

}  // namespace hsa
