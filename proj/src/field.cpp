#include "hsa/field.hpp"

#include <string>

namespace hsa {

PrimeField::PrimeField(uint32_t q) : q_(q) {
  if (!is_prime(q)) {
    throw InvalidOperand("field modulus must be prime, got " +
                         std::to_string(q));
  }
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a == 0) throw InvalidOperand("division by zero in F_q");
  // Extended Euclid on (a, q); q prime so gcd is 1.
  int64_t t = 0, new_t = 1;
  int64_t r = q_, new_r = a % q_;
  while (new_r != 0) {
    int64_t quot = r / new_r;
    int64_t tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return static_cast<uint32_t>(t);
}

uint32_t PrimeField::pow(uint32_t base, uint64_t e) const {
  uint64_t acc = 1, b = base % q_;
  while (e > 0) {
    if (e & 1) acc = acc * b % q_;
    b = b * b % q_;
    e >>= 1;
  }
  return static_cast<uint32_t>(acc);
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) return n == d;
  }
  // Trial division by 6k+-1; moduli in this library stay small.
  for (uint64_t d = 7; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 4) == 0) return false;
  }
  return true;
}

uint32_t next_prime_at_least(uint64_t n, uint64_t ceiling) {
  for (uint64_t c = n < 2 ? 2 : n; c <= ceiling; ++c) {
    if (is_prime(c)) return static_cast<uint32_t>(c);
  }
  throw SearchExhausted("no prime in [" + std::to_string(n) + ", " +
                        std::to_string(ceiling) + "]");
}

}  // namespace hsa
