// Shared parameter sets and frozen golden values. The moduli are the outputs
// of find_t_private_mds recorded once and pinned; the pattern counts come
// from the recursion oracle.
#pragma once

#include "hsa/params.hpp"

namespace fixtures {

// U=2, V=2, U0=2, V0=1, T=0: smallest interesting system, no collusion.
inline hsa::SystemShape tiny() { return {2, 2, 2, 1, 0}; }
constexpr uint32_t kTinyModulus = 5;
constexpr uint64_t kTinyPatternCount = 25;

// U=3, V=3, U0=2, V0=2, T=2: collusion-resilient system with padding.
inline hsa::SystemShape medium() { return {3, 3, 2, 2, 2}; }
constexpr uint32_t kMediumModulus = 23;
constexpr uint64_t kMediumPatternCount = 6223;

}  // namespace fixtures
