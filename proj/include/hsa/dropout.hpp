#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hsa/params.hpp"
#include "hsa/rng.hpp"

namespace hsa {

/// One session's nested survival sets, as bitmasks. Bit u-1 of a relay mask
/// marks relay (u); bit v-1 of v1[u]/v2[u] marks user (u+1, v+1).
/// round1_users (V1) are the users whose first-hop message reached their
/// relay; round2_users (V2) are the nested survivors of the second round;
/// round1_relays/round2_relays (U1/U2) likewise for the relay layer.
struct DropoutPattern {
  uint32_t round1_relays = 0;        // U1
  uint32_t round2_relays = 0;        // U2 subset of U1
  std::vector<uint32_t> round1_users;  // V1, one mask per relay
  std::vector<uint32_t> round2_users;  // V2, nested in V1

  bool operator==(const DropoutPattern&) const = default;
};

/// Flat ids of the users that survive round 1 under a surviving relay,
/// ascending. This is the set whose input sum the server must recover.
std::vector<int> surviving_union(const SystemShape& shape,
                                 const DropoutPattern& p);

/// Every violated admissibility constraint, with the offending index; empty
/// means admissible.
std::vector<std::string> validate_pattern(const SystemShape& shape,
                                          const DropoutPattern& p);

/// Pattern with no dropouts at all.
DropoutPattern full_survival(const SystemShape& shape);

/// Number of admissible patterns, saturating at cap+1.
uint64_t count_patterns(const SystemShape& shape, uint64_t cap = UINT64_MAX - 2);

/// Visits every admissible pattern exactly once, in ascending lexicographic
/// order of the tuple (U1, U2, V1[0], V2[0], V1[1], V2[1], ...) with each
/// mask compared as an integer. The visitor returns false to stop early.
/// Throws EnumerationTooLarge when the count exceeds `cap`.
void enumerate_patterns(const SystemShape& shape,
                        const std::function<bool(const DropoutPattern&)>& visit,
                        uint64_t cap = 10000000);

/// Admissible, seed-deterministic draw (not uniform): relay sets first, then
/// nested user sets, rejecting inadmissible masks.
DropoutPattern sample_pattern(const SystemShape& shape, Rng& rng);

/// One-line form: "U1=<mask> U2=<mask> V1=<m,m,...> V2=<m,m,...>".
std::string pattern_line(const DropoutPattern& p);
DropoutPattern parse_pattern_line(const SystemShape& shape,
                                  const std::string& line);

}  // namespace hsa
