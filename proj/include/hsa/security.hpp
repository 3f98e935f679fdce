#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hsa/exec.hpp"
#include "hsa/views.hpp"

namespace hsa {

/// I(A; B | C) in exact q-ary units via the rank identity
/// rank[A;C] + rank[B;C] - rank[A;B;C] - rank[C]. Nonnegative, integer.
/// Throws DimensionMismatch on column disagreement (empty operands pass).
int cond_mutual_info(const PrimeField& f, const Matrix& a, const Matrix& b,
                     const Matrix& c);

/// cond_mutual_info(a, inputs_matrix(lay), c) computed without building the
/// identity block; exact same value.
int mi_against_inputs(const PrimeField& f, const SecretLayout& lay,
                      const Matrix& a, const Matrix& c);

/// Labeled (observed, secrets, conditioned) triple for one relay adversary.
struct SecurityViews {
  LinearView observed;     // V
  LinearView secrets;      // all inputs
  LinearView conditioned;  // C
};

SecurityViews relay_views(const SystemParams& params, const MdsMatrix& alpha,
                          const DropoutPattern& pattern, int relay,
                          const std::vector<int>& colluders,
                          const ViewOptions& opts = {});

SecurityViews server_views(const SystemParams& params, const MdsMatrix& alpha,
                           const DropoutPattern& pattern,
                           const std::vector<int>& colluders,
                           const SessionPolicy& policy = {},
                           const ViewOptions& opts = {});

/// Leakage of relay `relay` colluding with `colluders` under `pattern`;
/// 0 for the certified scheme.
int check_relay_security(const SystemParams& params, const MdsMatrix& alpha,
                         const DropoutPattern& pattern, int relay,
                         const std::vector<int>& colluders,
                         const ViewOptions& opts = {});

/// Server leakage beyond the desired sum; 0 for the certified scheme.
int check_server_security(const SystemParams& params, const MdsMatrix& alpha,
                          const DropoutPattern& pattern,
                          const std::vector<int>& colluders,
                          const SessionPolicy& policy = {},
                          const ViewOptions& opts = {});

/// All colluding sets of size <= t, exhaustive when their number is within
/// `cap`, otherwise a seeded sample of `cap` sets (duplicates removed).
struct ColluderSets {
  std::vector<std::vector<int>> sets;
  bool exhaustive = true;
  uint64_t universe = 0;  // total number of admissible sets
};

ColluderSets colluder_sets(int users, int t, uint64_t cap = 100000,
                           uint64_t seed = 0);

/// One executed security check. `combos` counts how many (pattern, set)
/// combinations share this exact view and are therefore covered by it.
struct SecurityCheck {
  std::string kind;  // relay | server | tprivacy | lemma2
  uint64_t pattern_id = 0;
  int relay = -1;  // -1 when not relay-specific
  std::vector<int> colluders;
  uint64_t combos = 1;
  int mi = 0;
};

struct SweepOptions {
  bool sample_patterns = false;
  uint64_t samples = 1000;
  uint64_t seed = 0;
  uint64_t pattern_cap = 10000000;
  uint64_t colluder_cap = 100000;
  SessionPolicy policy;
  ViewOptions view;
  ExecMode exec = ExecMode::kParallel;
};

struct SecuritySweepReport {
  std::vector<SecurityCheck> checks;
  uint64_t patterns_covered = 0;
  uint64_t relay_combos = 0;   // (pattern, relay, set) triples covered
  uint64_t server_combos = 0;  // (pattern, set) pairs covered
  bool patterns_exhaustive = true;
  bool colluders_exhaustive = true;
  bool all_zero = true;
};

/// Relay + server checks across the dropout space. Identical view matrices
/// are evaluated once and reported with their multiplicity, so exhaustive
/// mode still covers every (pattern, adversary, colluding set) combination.
SecuritySweepReport sweep_security(const SystemParams& params,
                                   const MdsMatrix& alpha,
                                   const SweepOptions& opts = {});

/// Key-privacy audit over colluding sets: the colluders' precoded shares
/// must be independent of all mask vectors, and the non-members' masks must
/// be independent of everything the colluders hold.
struct KeyAuditRecord {
  std::vector<int> colluders;
  int share_leakage = 0;    // I(colluders' shares ; all masks)
  int nonmember_leakage = 0;
  bool pass = true;
};

struct KeyAuditReport {
  std::vector<KeyAuditRecord> records;
  std::vector<int> key_rank;  // per-user entropy of the key, q-ary units
  bool exhaustive = true;
  uint64_t sets_total = 0;
  bool all_pass = true;
};

KeyAuditReport audit_key_privacy(const SystemParams& params,
                                 const MdsMatrix& alpha,
                                 uint64_t colluder_cap = 100000,
                                 uint64_t seed = 0,
                                 ExecMode exec = ExecMode::kParallel);

/// Independence of overlapping block sums of the inputs: for admissible
/// index triples, the sum over the [u2] x [v2] block carries no information
/// about the sum over the [u3] x [v3] block jointly with the inputs and keys
/// of the [u1] x [v1] block. Keys act on separate coordinates, so the check
/// runs over input rows only.
struct BlockSumCheck {
  int v1, v2, v3, u1, u2, u3;
  int mi = 0;
};

std::vector<BlockSumCheck> check_block_sum_independence(
    const SystemParams& params);

/// Fixed report line: kind=... pattern=... relay=<u|-> colluders=<list>
/// mi=<int> pass=<bool>.
std::string check_line(const SecurityCheck& c);

void write_security_report(std::ostream& os, const SecuritySweepReport& r);

}  // namespace hsa
