#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "hsa/errors.hpp"

namespace hsa {

/// Exact nonnegative rational for rate bookkeeping. Always normalized.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw InvalidOperand("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  explicit Rational(long long n) : num(n), den(1) {}

  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rational& o) const { return !(o < *this); }

  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace hsa
