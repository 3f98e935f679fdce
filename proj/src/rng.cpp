#include "hsa/rng.hpp"

#include "hsa/errors.hpp"

namespace hsa {

uint64_t Rng::mix(uint64_t x) {
  // splitmix64 finalizer.
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint32_t Rng::below(uint32_t n) {
  if (n == 0) throw InvalidOperand("Rng::below(0)");
  if (n == 1) return 0;
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<uint32_t>(x % n);
}

}  // namespace hsa
