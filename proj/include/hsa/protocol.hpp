#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "hsa/dropout.hpp"
#include "hsa/keys.hpp"

namespace hsa {

/// How a relay picks which user_floor key shares to forward in round 2. The
/// model allows any choice, so the policy is a session parameter.
enum class SelectionPolicy { kLowestIndex, kSeededRandom };

struct SessionPolicy {
  SelectionPolicy kind = SelectionPolicy::kLowestIndex;
  uint64_t seed = 0;  // used only by kSeededRandom
};

/// Full record of one protocol session. Message vectors hold field symbols;
/// absent entries mark nodes that transmitted nothing in that phase.
struct Transcript {
  DropoutPattern pattern;
  uint64_t seed = 0;  // session seed, informational
  // Round 1, hop 1: every user masks its input.
  std::vector<std::vector<uint32_t>> round1_user;  // X1, per user
  // Round 1, hop 2: every relay aggregates its surviving users.
  std::vector<std::vector<uint32_t>> round1_relay;  // Y1, per relay
  // Signaling: surviving users of round 1, ascending flat ids.
  std::vector<int> surviving;  // S1
  // Round 2, hop 1: one key-share symbol per surviving user.
  std::vector<std::optional<uint32_t>> round2_user;  // X2
  // Round 2, hop 2: forwarded shares; selection[u] lists the chosen users.
  std::vector<std::optional<std::vector<int>>> selection;           // Q_u
  std::vector<std::optional<std::vector<uint32_t>>> round2_relay;   // Y2
  std::vector<uint32_t> decoded;  // recovered input sum over S1
  bool surplus_consistent = true;
};

/// X1 = input + mask, componentwise. Throws LengthMismatch.
std::vector<uint32_t> user_round1(const PrimeField& f,
                                  const std::vector<uint32_t>& input,
                                  const std::vector<uint32_t>& mask);

/// Y1 = sum of the surviving users' round-1 messages. `cluster` is indexed
/// by slot; a missing entry for a surviving slot throws MissingMessage.
std::vector<uint32_t> relay_round1(
    const PrimeField& f,
    const std::vector<std::optional<std::vector<uint32_t>>>& cluster,
    uint32_t survivors_mask, int input_len);

/// S1: union of the surviving clusters over surviving relays, ascending.
std::vector<int> server_signaling(const SystemShape& shape, uint32_t relays_mask,
                                  const std::vector<uint32_t>& user_masks);

/// X2 for `user`: sum of the precoded shares of every user in s1, one field
/// symbol. Throws NotSurviving when user is not in s1.
uint32_t user_round2(const KeyMaterial& km, int user,
                     const std::vector<int>& s1);

/// Which user_floor members of the surviving cluster the relay forwards,
/// ascending flat ids. Throws TooFewSurvivors.
std::vector<int> relay_selection(const SystemParams& params,
                                 uint32_t survivors_mask, int relay,
                                 const SessionPolicy& policy);

/// Applies relay_selection and returns the chosen ids with their share
/// symbols.
std::pair<std::vector<int>, std::vector<uint32_t>> relay_round2(
    const SystemParams& params,
    const std::vector<std::optional<uint32_t>>& shares, uint32_t survivors_mask,
    int relay, const SessionPolicy& policy);

struct DecodeResult {
  std::vector<uint32_t> sum;
  bool surplus_consistent = true;
};

/// Recovers the input sum over s1: solves the precoding submatrix given by
/// the first decode_width coded symbols in canonical (relay, user) order for
/// the aggregated base randomness, then subtracts the aggregated mask from
/// the round-1 aggregate. Surplus symbols are cross-checked against the
/// solution. Throws InsufficientSymbols when fewer than decode_width coded
/// symbols are available.
DecodeResult server_decode(
    const SystemParams& params, const MdsMatrix& alpha,
    const std::vector<std::vector<uint32_t>>& round1_relay, uint32_t relays_mask,
    const std::vector<std::pair<int, uint32_t>>& coded,
    const std::vector<int>& s1);

/// Runs one full session in protocol order. Pure function of its inputs.
Transcript run_session(const KeyMaterial& km,
                       const std::vector<std::vector<uint32_t>>& inputs,
                       const DropoutPattern& pattern,
                       const SessionPolicy& policy = {});

void write_transcript(std::ostream& os, const SystemParams& params,
                      const Transcript& t);

}  // namespace hsa
