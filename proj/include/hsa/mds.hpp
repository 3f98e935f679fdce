#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hsa/exec.hpp"
#include "hsa/matrix.hpp"
#include "hsa/params.hpp"

namespace hsa {

/// Precoding matrix for the second-round key shares: decode_width rows,
/// one column per user. Column c (0-based flat user id, c = V*(u-1)+(v-1))
/// holds (g_1^e, ..., g_m^e) with row generators g_r = r and exponent
/// e = points[c] - 1; the canonical point set (1, 2, ..., U*V) therefore
/// uses exponent c. Build output is a *candidate*: nothing is guaranteed
/// until both certificates below pass.
struct MdsMatrix {
  SystemShape shape;
  uint32_t modulus = 0;
  Matrix alpha;
  std::vector<uint32_t> points;

  int column_of(int user) const { return user; }
};

/// Count of maximal square submatrices inspected, for audit output.
struct CertifyStats {
  uint64_t submatrices_checked = 0;
};

std::vector<uint32_t> canonical_points(const SystemShape& shape);

/// Throws InsufficientField when q <= U*V, InvalidOperand when points are
/// not pairwise-distinct nonzero field elements.
MdsMatrix build_candidate(const SystemShape& shape, uint32_t modulus,
                          const std::vector<uint32_t>& points);

/// True iff every decode_width x decode_width column submatrix is
/// nonsingular; exhaustive over all column subsets. Throws
/// CertificationTooLarge when the subset count exceeds `cap`.
bool certify_mds(const MdsMatrix& cand, ExecMode mode = ExecMode::kParallel,
                 uint64_t cap = 1000000, CertifyStats* stats = nullptr);

/// True iff t == 0 or the last-t-rows submatrix is itself MDS as a t x UV
/// matrix.
bool certify_t_private(const MdsMatrix& cand, int t,
                       ExecMode mode = ExecMode::kParallel,
                       uint64_t cap = 1000000, CertifyStats* stats = nullptr);

struct MdsSearchOptions {
  uint64_t prime_ceiling = 5000;
  int random_sets_per_prime = 50;
  uint64_t seed = 0;
  uint64_t certify_cap = 1000000;
  ExecMode exec = ExecMode::kParallel;
};

struct MdsSearchResult {
  MdsMatrix matrix;
  int primes_tried = 0;
  int candidates_tried = 0;
};

/// Deterministic search: ascending primes from U*V + 1, canonical points
/// first, then seeded random point sets, until both certificates pass.
/// Throws InfeasibleParams when the shape is inadmissible and
/// SearchExhausted when the prime ceiling is reached.
MdsSearchResult find_t_private_mds(const SystemShape& shape,
                                   const MdsSearchOptions& opts = {});

/// Same candidate order at one fixed modulus.
MdsSearchResult find_mds_at(const SystemShape& shape, uint32_t modulus,
                            const MdsSearchOptions& opts = {});

void write_mds(std::ostream& os, const MdsMatrix& m);

/// Re-runs both certificates on import unless `trust` is set.
MdsMatrix read_mds(std::istream& is, bool trust = false,
                   uint64_t certify_cap = 1000000);

/// Binomial coefficient, saturating at `cap`+1 so callers can compare
/// against a limit without overflow.
uint64_t n_choose_k_capped(int n, int k, uint64_t cap);

/// k-subset of [0, n) with lexicographic rank `rank`.
std::vector<int> unrank_combination(int n, int k, uint64_t rank);

}  // namespace hsa
