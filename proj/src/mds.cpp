#include "hsa/mds.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hsa/rng.hpp"

namespace hsa {

int exec_width() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

uint64_t n_choose_k_capped(int n, int k, uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * (uint64_t)(n - k + i) / (uint64_t)i;
    if (acc > cap) return cap + 1;
  }
  return (uint64_t)acc;
}

std::vector<int> unrank_combination(int n, int k, uint64_t rank) {
  std::vector<int> out;
  out.reserve(k);
  int x = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const uint64_t block = n_choose_k_capped(n - x - 1, k - i - 1, UINT64_MAX - 2);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    out.push_back(x);
    ++x;
  }
  return out;
}

std::vector<uint32_t> canonical_points(const SystemShape& shape) {
  std::vector<uint32_t> pts(shape.total_users());
  for (size_t i = 0; i < pts.size(); ++i) pts[i] = static_cast<uint32_t>(i + 1);
  return pts;
}

MdsMatrix build_candidate(const SystemShape& shape, uint32_t modulus,
                          const std::vector<uint32_t>& points) {
  const int n = shape.total_users();
  const int m = shape.decode_width();
  if (modulus <= static_cast<uint32_t>(n)) {
    throw InsufficientField("need q > U*V = " + std::to_string(n) + ", got " +
                            std::to_string(modulus));
  }
  if (static_cast<int>(points.size()) != n) {
    throw InvalidOperand("expected one point per user");
  }
  const PrimeField f(modulus);
  std::set<uint32_t> seen;
  for (uint32_t p : points) {
    if (p == 0 || p >= modulus) throw InvalidOperand("points must be nonzero field elements");
    if (!seen.insert(p).second) throw InvalidOperand("points must be pairwise distinct");
  }
  MdsMatrix out{shape, modulus, Matrix(m, n), points};
  for (int c = 0; c < n; ++c) {
    const uint32_t e = points[c] - 1;
    for (int r = 0; r < m; ++r) {
      out.alpha.at(r, c) = f.pow(static_cast<uint32_t>(r + 1), e);
    }
  }
  return out;
}

namespace {

// Exhaustive nonsingularity sweep over all rows x rows column submatrices.
bool all_square_submatrices_nonsingular(const PrimeField& f, const Matrix& a,
                                        ExecMode mode, uint64_t cap,
                                        CertifyStats* stats) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (m == 0) return true;
  if (n < m) return false;
  const uint64_t total = n_choose_k_capped(n, m, cap);
  if (total > cap) {
    throw CertificationTooLarge("submatrix count exceeds cap " +
                                std::to_string(cap));
  }
  if (stats) stats->submatrices_checked += total;

  std::atomic<bool> ok{true};
  auto check_range = [&](uint64_t begin, uint64_t end) {
    std::vector<int> cols = unrank_combination(n, m, begin);
    Matrix sub(m, m);
    for (uint64_t r = begin; r < end && ok.load(std::memory_order_relaxed); ++r) {
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) sub.at(i, j) = a.at(i, cols[j]);
      }
      if (mat_rank(f, sub) != static_cast<size_t>(m)) {
        ok.store(false, std::memory_order_relaxed);
        return;
      }
      // Advance to the next combination in lexicographic order.
      int i = m - 1;
      while (i >= 0 && cols[i] == n - m + i) --i;
      if (i < 0) break;
      ++cols[i];
      for (int j = i + 1; j < m; ++j) cols[j] = cols[j - 1] + 1;
    }
  };

  if (mode == ExecMode::kSerial || total < 64) {
    check_range(0, total);
  } else {
#ifdef _OPENMP
    const int workers = omp_get_max_threads();
    const uint64_t chunk = (total + workers - 1) / workers;
#pragma omp parallel for schedule(static, 1)
    for (int w = 0; w < workers; ++w) {
      const uint64_t begin = chunk * w;
      if (begin < total) check_range(begin, std::min(total, begin + chunk));
    }
#else
    check_range(0, total);
#endif
  }
  return ok.load();
}

}  // namespace

bool certify_mds(const MdsMatrix& cand, ExecMode mode, uint64_t cap,
                 CertifyStats* stats) {
  const PrimeField f(cand.modulus);
  return all_square_submatrices_nonsingular(f, cand.alpha, mode, cap, stats);
}

bool certify_t_private(const MdsMatrix& cand, int t, ExecMode mode,
                       uint64_t cap, CertifyStats* stats) {
  if (t < 0 || t > static_cast<int>(cand.alpha.rows())) {
    throw InvalidOperand("t must lie in [0, rows]");
  }
  if (t == 0) return true;
  const size_t first = cand.alpha.rows() - t;
  Matrix tail(static_cast<size_t>(t), cand.alpha.cols());
  for (size_t i = 0; i < static_cast<size_t>(t); ++i) {
    for (size_t j = 0; j < cand.alpha.cols(); ++j) {
      tail.at(i, j) = cand.alpha.at(first + i, j);
    }
  }
  const PrimeField f(cand.modulus);
  return all_square_submatrices_nonsingular(f, tail, mode, cap, stats);
}

namespace {

MdsSearchResult search_primes(const SystemShape& shape, uint32_t first_prime,
                              bool single_prime, const MdsSearchOptions& opts) {
  auto bad = shape.violations();
  if (!bad.empty()) throw InfeasibleParams(bad.front());

  MdsSearchResult res;
  Rng rng = Rng(opts.seed).stream(0x6d6473);  // "mds"
  uint32_t q = first_prime;
  while (true) {
    ++res.primes_tried;
    for (int attempt = 0; attempt <= opts.random_sets_per_prime; ++attempt) {
      std::vector<uint32_t> pts;
      if (attempt == 0) {
        pts = canonical_points(shape);
      } else {
        std::set<uint32_t> chosen;
        while (static_cast<int>(chosen.size()) < shape.total_users()) {
          chosen.insert(1 + rng.below(q - 1));
        }
        pts.assign(chosen.begin(), chosen.end());
      }
      ++res.candidates_tried;
      MdsMatrix cand = build_candidate(shape, q, pts);
      if (certify_mds(cand, opts.exec, opts.certify_cap) &&
          certify_t_private(cand, shape.colluders_max, opts.exec,
                            opts.certify_cap)) {
        res.matrix = std::move(cand);
        return res;
      }
    }
    if (single_prime) {
      throw SearchExhausted("no certified matrix at q=" + std::to_string(q) +
                            " within the candidate budget");
    }
    if (q >= opts.prime_ceiling) {
      throw SearchExhausted("no certified matrix up to prime ceiling " +
                            std::to_string(opts.prime_ceiling));
    }
    q = next_prime_at_least(uint64_t(q) + 1, opts.prime_ceiling);
  }
}

}  // namespace

MdsSearchResult find_t_private_mds(const SystemShape& shape,
                                   const MdsSearchOptions& opts) {
  const uint32_t q0 =
      next_prime_at_least(uint64_t(shape.total_users()) + 1, opts.prime_ceiling);
  return search_primes(shape, q0, false, opts);
}

MdsSearchResult find_mds_at(const SystemShape& shape, uint32_t modulus,
                            const MdsSearchOptions& opts) {
  if (!is_prime(modulus)) {
    throw InvalidOperand("modulus q must be prime, got " +
                         std::to_string(modulus));
  }
  return search_primes(shape, modulus, true, opts);
}

void write_mds(std::ostream& os, const MdsMatrix& m) {
  os << "U=" << m.shape.relays << " V=" << m.shape.users_per_relay
     << " U0=" << m.shape.relay_floor << " V0=" << m.shape.user_floor
     << " T=" << m.shape.colluders_max << " q=" << m.modulus << "\n";
  for (size_t r = 0; r < m.alpha.rows(); ++r) {
    for (size_t c = 0; c < m.alpha.cols(); ++c) {
      os << (c ? " " : "") << m.alpha.at(r, c);
    }
    os << "\n";
  }
}

MdsMatrix read_mds(std::istream& is, bool trust, uint64_t certify_cap) {
  std::string header;
  if (!std::getline(is, header)) throw IoError("empty precoding matrix file");
  SystemShape shape;
  long long q = 0;
  std::istringstream hs(header);
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw IoError("bad header token: " + tok);
    const std::string key = tok.substr(0, eq);
    const long long val = std::stoll(tok.substr(eq + 1));
    if (key == "U") shape.relays = static_cast<int>(val);
    else if (key == "V") shape.users_per_relay = static_cast<int>(val);
    else if (key == "U0") shape.relay_floor = static_cast<int>(val);
    else if (key == "V0") shape.user_floor = static_cast<int>(val);
    else if (key == "T") shape.colluders_max = static_cast<int>(val);
    else if (key == "q") q = val;
    else throw IoError("unknown header key: " + key);
  }
  MdsMatrix out;
  out.shape = shape;
  out.modulus = static_cast<uint32_t>(q);
  out.alpha = Matrix(shape.decode_width(), shape.total_users());
  for (size_t r = 0; r < out.alpha.rows(); ++r) {
    for (size_t c = 0; c < out.alpha.cols(); ++c) {
      long long v;
      if (!(is >> v)) throw IoError("truncated matrix body");
      if (v < 0 || v >= q) throw IoError("entry out of field range");
      out.alpha.at(r, c) = static_cast<uint32_t>(v);
    }
  }
  if (!trust) {
    if (!certify_mds(out, ExecMode::kParallel, certify_cap) ||
        !certify_t_private(out, shape.colluders_max, ExecMode::kParallel,
                           certify_cap)) {
      throw IoError("imported matrix failed certification (use trust to skip)");
    }
  }
  return out;
}

}  // namespace hsa
