#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hsa/mds.hpp"
#include "hsa/params.hpp"
#include "hsa/rng.hpp"

namespace hsa {

/// Dealer-side base randomness: per user one masking vector of input_len
/// symbols and one padding vector of colluders_max symbols, all i.i.d.
/// uniform from the seeded generator. The full collection is the source key;
/// it never leaves the dealer.
struct BaseRandomness {
  std::vector<std::vector<uint32_t>> mask;  // N, indexed by flat user id
  std::vector<std::vector<uint32_t>> pad;   // S
};

/// Everything the dealer hands out. User (u,v)'s key is its own mask vector
/// plus one precoded scalar per source user: share[i][c] is the column-c
/// projection of (mask[i] || pad[i]) under alpha.
struct KeyMaterial {
  SystemParams params;
  uint64_t seed = 0;
  BaseRandomness base;
  std::vector<std::vector<uint32_t>> share;  // [source user][target user]
  MdsMatrix alpha;
};

/// Same (params, seed) always yields identical output; the dealer never sees
/// any user input.
BaseRandomness sample_base(const SystemParams& params, uint64_t seed);

/// Throws DimensionMismatch when alpha's shape disagrees with params.
KeyMaterial derive_keys(const SystemParams& params, uint64_t seed,
                        const BaseRandomness& base, const MdsMatrix& alpha);

KeyMaterial deal_keys(const SystemParams& params, uint64_t seed,
                      const MdsMatrix& alpha);

void write_keys(std::ostream& os, const KeyMaterial& km);

}  // namespace hsa
