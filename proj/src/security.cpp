#include "hsa/security.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hsa {

int cond_mutual_info(const PrimeField& f, const Matrix& a, const Matrix& b,
                     const Matrix& c) {
  const Matrix ac = vstack(a, c);
  const Matrix bc = vstack(b, c);
  const Matrix abc = vstack(a, bc);
  const long long mi =
      static_cast<long long>(mat_rank(f, ac)) + static_cast<long long>(mat_rank(f, bc)) -
      static_cast<long long>(mat_rank(f, abc)) - static_cast<long long>(mat_rank(f, c));
  return static_cast<int>(mi);
}

int mi_against_inputs(const PrimeField& f, const SecretLayout& lay,
                      const Matrix& a, const Matrix& c) {
  const Matrix ac = vstack(a, c);
  const size_t h = lay.hidden_begin();
  const long long mi =
      static_cast<long long>(mat_rank(f, ac)) - static_cast<long long>(mat_rank(f, c)) +
      static_cast<long long>(mat_rank(f, take_cols(c, h, lay.cols()))) -
      static_cast<long long>(mat_rank(f, take_cols(ac, h, lay.cols())));
  return static_cast<int>(mi);
}

namespace {


LinearView labeled(Matrix m, const std::string& prefix) {
  LinearView v;
  v.labels.assign(m.rows(), prefix);
  v.rows = std::move(m);
  return v;
}

LinearView labeled_colluders(const SystemParams& params, const MdsMatrix& alpha,
                             const SecretLayout& lay,
                             const std::vector<int>& colluders) {
  LinearView v;
  v.rows = colluder_matrix(params, alpha, lay, colluders);
  for (int user : colluders) {
    const std::string who = params.user_label(user);
    for (int i = 0; i < lay.input_len; ++i) {
      v.labels.push_back("W" + who + "[" + std::to_string(i) + "]");
    }
    for (int i = 0; i < lay.input_len; ++i) {
      v.labels.push_back("Z" + who + ".N[" + std::to_string(i) + "]");
    }
    for (int src = 0; src < params.total_users(); ++src) {
      v.labels.push_back("Z" + who + ".Q" + params.user_label(src));
    }
  }
  return v;
}

}  // namespace

SecurityViews relay_views(const SystemParams& params, const MdsMatrix& alpha,
                          const DropoutPattern& pattern, int relay,
                          const std::vector<int>& colluders,
                          const ViewOptions& opts) {
  const SecretLayout lay(params.shape());
  const std::vector<int> s1 =
      server_signaling(params.shape(), pattern.round1_relays, pattern.round1_users);
  const bool in_round1 = pattern.round1_relays >> relay & 1;

  SecurityViews out;
  out.observed.rows = relay_observed(params, alpha, lay, s1, relay, in_round1, opts);
  for (int v = 0; v < params.users_per_relay(); ++v) {
    const std::string who = params.user_label(params.user_id(relay, v));
    for (int i = 0; i < lay.input_len; ++i) {
      out.observed.labels.push_back("X1" + who + "[" + std::to_string(i) + "]");
    }
  }
  if (in_round1) {
    for (int user : s1) {
      if (params.relay_of(user) == relay) {
        out.observed.labels.push_back("X2" + params.user_label(user));
      }
    }
  }
  out.secrets = labeled(inputs_matrix(lay), "W");
  out.conditioned = labeled_colluders(params, alpha, lay, colluders);
  return out;
}

SecurityViews server_views(const SystemParams& params, const MdsMatrix& alpha,
                           const DropoutPattern& pattern,
                           const std::vector<int>& colluders,
                           const SessionPolicy& policy,
                           const ViewOptions& opts) {
  const SecretLayout lay(params.shape());
  const ServerViewKey key = server_key_for(params, pattern, policy);
  const std::vector<int> s1 =
      server_signaling(params.shape(), key.round1_relays, key.round1_users);

  SecurityViews out;
  out.observed.rows = server_observed(params, alpha, lay, key, opts);
  for (int u = 0; u < params.relays(); ++u) {
    for (int i = 0; i < lay.input_len; ++i) {
      out.observed.labels.push_back("Y1(" + std::to_string(u + 1) + ")[" +
                                    std::to_string(i) + "]");
    }
  }
  for (int u = 0; u < params.relays(); ++u) {
    if (!key.selections[u]) continue;
    for (int user : *key.selections[u]) {
      out.observed.labels.push_back("Y2(" + std::to_string(u + 1) + ")<-X2" +
                                    params.user_label(user));
    }
  }
  out.secrets = labeled(inputs_matrix(lay), "W");
  out.conditioned.rows =
      vstack(sum_matrix(lay, s1), colluder_matrix(params, alpha, lay, colluders));
  for (int i = 0; i < lay.input_len; ++i) {
    out.conditioned.labels.push_back("sum(S1)[" + std::to_string(i) + "]");
  }
  const LinearView cv = labeled_colluders(params, alpha, lay, colluders);
  out.conditioned.labels.insert(out.conditioned.labels.end(), cv.labels.begin(),
                                cv.labels.end());
  return out;
}

int check_relay_security(const SystemParams& params, const MdsMatrix& alpha,
                         const DropoutPattern& pattern, int relay,
                         const std::vector<int>& colluders,
                         const ViewOptions& opts) {
  const PrimeField f(params.modulus());
  const SecretLayout lay(params.shape());
  const std::vector<int> s1 =
      server_signaling(params.shape(), pattern.round1_relays, pattern.round1_users);
  Matrix a = relay_observed(params, alpha, lay, s1, relay,
                            pattern.round1_relays >> relay & 1, opts);
  if (opts.add_colluder_messages) {
    a = vstack(a, colluder_messages(alpha, lay, s1, colluders, opts));
  }
  const Matrix c = colluder_matrix(params, alpha, lay, colluders);
  return mi_against_inputs(f, lay, a, c);
}

int check_server_security(const SystemParams& params, const MdsMatrix& alpha,
                          const DropoutPattern& pattern,
                          const std::vector<int>& colluders,
                          const SessionPolicy& policy, const ViewOptions& opts) {
  const PrimeField f(params.modulus());
  const SecretLayout lay(params.shape());
  const ServerViewKey key = server_key_for(params, pattern, policy);
  const std::vector<int> s1 =
      server_signaling(params.shape(), key.round1_relays, key.round1_users);
  Matrix a = server_observed(params, alpha, lay, key, opts);
  if (opts.add_colluder_messages) {
    a = vstack(a, colluder_messages(alpha, lay, s1, colluders, opts));
  }
  const Matrix c =
      vstack(sum_matrix(lay, s1), colluder_matrix(params, alpha, lay, colluders));
  return mi_against_inputs(f, lay, a, c);
}

ColluderSets colluder_sets(int users, int t, uint64_t cap, uint64_t seed) {
  ColluderSets out;
  out.universe = 0;
  for (int k = 0; k <= t; ++k) {
    out.universe += n_choose_k_capped(users, k, UINT64_MAX - 2);
  }
  if (out.universe <= cap) {
    for (int k = 0; k <= t; ++k) {
      const uint64_t total = n_choose_k_capped(users, k, UINT64_MAX - 2);
      for (uint64_t r = 0; r < total; ++r) {
        out.sets.push_back(unrank_combination(users, k, r));
      }
    }
    return out;
  }
  out.exhaustive = false;
  Rng rng = Rng(seed).stream(0x636f6c);
  std::set<std::vector<int>> seen;
  while (seen.size() < cap) {
    const int k = static_cast<int>(rng.below(static_cast<uint32_t>(t + 1)));
    std::set<int> pick;
    while (static_cast<int>(pick.size()) < k) {
      pick.insert(static_cast<int>(rng.below(static_cast<uint32_t>(users))));
    }
    seen.emplace(pick.begin(), pick.end());
  }
  out.sets.assign(seen.begin(), seen.end());
  return out;
}

namespace {

struct ViewClass {
  uint64_t first_pattern = 0;
  uint64_t count = 0;
};

std::string relay_class_key(int relay, bool in_round1,
                            const std::vector<int>& s1) {
  std::string key = "R" + std::to_string(relay);
  if (!in_round1) return key + "|-";
  key += "|";
  for (int u : s1) key += std::to_string(u) + ",";
  return key;
}

std::string server_class_key(const ServerViewKey& k) {
  std::string key = "S" + std::to_string(k.round1_relays);
  for (uint32_t m : k.round1_users) key += "|" + std::to_string(m);
  for (const auto& sel : k.selections) {
    key += ";";
    if (!sel) {
      key += "-";
    } else {
      for (int u : *sel) key += std::to_string(u) + ",";
    }
  }
  return key;
}

}  // namespace

SecuritySweepReport sweep_security(const SystemParams& params,
                                   const MdsMatrix& alpha,
                                   const SweepOptions& opts) {
  const PrimeField f(params.modulus());
  const SecretLayout lay(params.shape());
  const SystemShape& shape = params.shape();

  // Pass 1: collect distinct view classes over the pattern space.
  std::map<std::string, ViewClass> relay_classes;
  std::map<std::string, ViewClass> server_classes;
  struct RelayClassData {
    int relay;
    bool in_round1;
    std::vector<int> s1;
  };
  std::map<std::string, RelayClassData> relay_data;
  std::map<std::string, ServerViewKey> server_data;

  uint64_t pattern_count = 0;
  auto absorb = [&](const DropoutPattern& p) {
    const uint64_t id = pattern_count++;
    const std::vector<int> s1 =
        server_signaling(shape, p.round1_relays, p.round1_users);
    for (int u = 0; u < shape.relays; ++u) {
      const bool in1 = p.round1_relays >> u & 1;
      const std::string key = relay_class_key(u, in1, s1);
      auto [it, fresh] = relay_classes.try_emplace(key, ViewClass{id, 0});
      it->second.count++;
      if (fresh) relay_data.emplace(key, RelayClassData{u, in1, s1});
    }
    const ServerViewKey skey = server_key_for(params, p, opts.policy);
    const std::string key = server_class_key(skey);
    auto [it, fresh] = server_classes.try_emplace(key, ViewClass{id, 0});
    it->second.count++;
    if (fresh) server_data.emplace(key, skey);
    return true;
  };

  SecuritySweepReport report;
  if (opts.sample_patterns) {
    report.patterns_exhaustive = false;
    Rng rng = Rng(opts.seed).stream(0x706174);
    for (uint64_t i = 0; i < opts.samples; ++i) absorb(sample_pattern(shape, rng));
  } else {
    enumerate_patterns(shape, absorb, opts.pattern_cap);
  }
  report.patterns_covered = pattern_count;

  const ColluderSets sets = colluder_sets(params.total_users(),
                                          params.colluders_max(),
                                          opts.colluder_cap, opts.seed);
  report.colluders_exhaustive = sets.exhaustive;

  // Conditioning ranks shared across tasks.
  const size_t h = lay.hidden_begin();
  struct CondRanks {
    Matrix m;
    size_t full = 0, hidden = 0;
  };
  std::vector<CondRanks> colluder_cond(sets.sets.size());
  for (size_t i = 0; i < sets.sets.size(); ++i) {
    colluder_cond[i].m = colluder_matrix(params, alpha, lay, sets.sets[i]);
    colluder_cond[i].full = mat_rank(f, colluder_cond[i].m);
    colluder_cond[i].hidden =
        mat_rank(f, take_cols(colluder_cond[i].m, h, lay.cols()));
  }

  // Flatten (class x colluder set) into a deterministic task list.
  struct Task {
    const std::string* key;
    bool is_relay;
    size_t set_idx;
  };
  std::vector<Task> tasks;
  for (const auto& kv : relay_classes) {
    for (size_t s = 0; s < sets.sets.size(); ++s) {
      tasks.push_back({&kv.first, true, s});
    }
  }
  for (const auto& kv : server_classes) {
    for (size_t s = 0; s < sets.sets.size(); ++s) {
      tasks.push_back({&kv.first, false, s});
    }
  }

  std::vector<int> mi(tasks.size(), 0);
  const int64_t n_tasks = static_cast<int64_t>(tasks.size());
  const bool parallel = opts.exec == ExecMode::kParallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
  for (int64_t i = 0; i < n_tasks; ++i) {
    const Task& task = tasks[i];
    const std::vector<int>& members = sets.sets[task.set_idx];
    if (task.is_relay) {
      const RelayClassData& d = relay_data.at(*task.key);
      Matrix a = relay_observed(params, alpha, lay, d.s1, d.relay,
                                d.in_round1, opts.view);
      if (opts.view.add_colluder_messages) {
        a = vstack(a, colluder_messages(alpha, lay, d.s1, members,
                                        opts.view));
      }
      const CondRanks& cr = colluder_cond[task.set_idx];
      const Matrix ac = vstack(a, cr.m);
      mi[i] = static_cast<int>(
          static_cast<long long>(mat_rank(f, ac)) - static_cast<long long>(cr.full) +
          static_cast<long long>(cr.hidden) -
          static_cast<long long>(mat_rank(f, take_cols(ac, h, lay.cols()))));
    } else {
      const ServerViewKey& key = server_data.at(*task.key);
      const std::vector<int> s1 =
          server_signaling(shape, key.round1_relays, key.round1_users);
      Matrix a = server_observed(params, alpha, lay, key, opts.view);
      if (opts.view.add_colluder_messages) {
        a = vstack(a, colluder_messages(alpha, lay, s1, members,
                                        opts.view));
      }
      const Matrix c =
          vstack(sum_matrix(lay, s1), colluder_cond[task.set_idx].m);
      mi[i] = mi_against_inputs(f, lay, a, c);
    }
  }

  for (size_t i = 0; i < tasks.size(); ++i) {
    const Task& task = tasks[i];
    SecurityCheck check;
    check.colluders = sets.sets[task.set_idx];
    check.mi = mi[i];
    if (task.is_relay) {
      const auto& cls = relay_classes.at(*task.key);
      check.kind = "relay";
      check.relay = relay_data.at(*task.key).relay;
      check.pattern_id = cls.first_pattern;
      check.combos = cls.count;
      report.relay_combos += cls.count;
    } else {
      const auto& cls = server_classes.at(*task.key);
      check.kind = "server";
      check.pattern_id = cls.first_pattern;
      check.combos = cls.count;
      report.server_combos += cls.count;
    }
    if (check.mi != 0) report.all_zero = false;
    report.checks.push_back(std::move(check));
  }
  return report;
}

namespace {

// The precoded share rows of one user (its key minus the private mask rows).
Matrix share_rows(const SystemParams& params, const MdsMatrix& alpha,
                  const SecretLayout& lay, int user) {
  const Matrix km = key_matrix(params, alpha, lay, user);
  Matrix out(0, 0);
  for (size_t r = static_cast<size_t>(lay.input_len); r < km.rows(); ++r) {
    out.append_row(std::vector<uint32_t>(km.row_ptr(r), km.row_ptr(r) + km.cols()));
  }
  return out;
}

Matrix mask_rows(const SecretLayout& lay, const std::vector<int>& users) {
  Matrix out(users.size() * lay.input_len, lay.cols());
  size_t r = 0;
  for (int user : users) {
    for (int i = 0; i < lay.input_len; ++i, ++r) {
      out.at(r, lay.mask_col(user, i)) = 1;
    }
  }
  return out;
}

}  // namespace

KeyAuditReport audit_key_privacy(const SystemParams& params,
                                 const MdsMatrix& alpha, uint64_t colluder_cap,
                                 uint64_t seed, ExecMode exec) {
  const PrimeField f(params.modulus());
  const SecretLayout lay(params.shape());
  const int n = params.total_users();

  KeyAuditReport report;
  for (int user = 0; user < n; ++user) {
    report.key_rank.push_back(
        static_cast<int>(mat_rank(f, key_matrix(params, alpha, lay, user))));
  }

  const ColluderSets sets =
      colluder_sets(n, params.colluders_max(), colluder_cap, seed);
  report.exhaustive = sets.exhaustive;
  report.sets_total = sets.universe;
  report.records.resize(sets.sets.size());

  std::vector<int> everyone(n);
  for (int i = 0; i < n; ++i) everyone[i] = i;
  const Matrix all_masks = mask_rows(lay, everyone);

  const int64_t n_sets = static_cast<int64_t>(sets.sets.size());
  const bool parallel = exec == ExecMode::kParallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
#endif
  for (int64_t i = 0; i < n_sets; ++i) {
    const std::vector<int>& members = sets.sets[i];
    KeyAuditRecord rec;
    rec.colluders = members;
    Matrix shares(0, 0);
    for (int user : members) {
      shares = vstack(shares, share_rows(params, alpha, lay, user));
    }
    if (shares.empty()) shares = Matrix(0, lay.cols());
    rec.share_leakage = cond_mutual_info(f, shares, all_masks, Matrix(0, lay.cols()));

    std::vector<int> outsiders;
    for (int u = 0; u < n; ++u) {
      if (std::find(members.begin(), members.end(), u) == members.end()) {
        outsiders.push_back(u);
      }
    }
    const Matrix held = vstack(mask_rows(lay, members), shares);
    rec.nonmember_leakage = cond_mutual_info(f, mask_rows(lay, outsiders), held,
                                             Matrix(0, lay.cols()));
    rec.pass = rec.share_leakage == 0 && rec.nonmember_leakage == 0;
    report.records[i] = std::move(rec);
  }
  for (const auto& rec : report.records) {
    if (!rec.pass) report.all_pass = false;
  }
  return report;
}

std::vector<BlockSumCheck> check_block_sum_independence(
    const SystemParams& params) {
  const PrimeField f(params.modulus());
  const SecretLayout lay(params.shape());
  const int u_max = params.relays();
  const int v_max = params.users_per_relay();

  auto block_users = [&](int u_hi, int v_hi) {
    std::vector<int> users;
    for (int u = 0; u < u_hi; ++u) {
      for (int v = 0; v < v_hi; ++v) users.push_back(params.user_id(u, v));
    }
    return users;
  };
  auto input_rows = [&](const std::vector<int>& users) {
    Matrix out(users.size() * lay.input_len, lay.cols());
    size_t r = 0;
    for (int user : users) {
      for (int i = 0; i < lay.input_len; ++i, ++r) {
        out.at(r, lay.input_col(user, i)) = 1;
      }
    }
    return out;
  };

  std::vector<BlockSumCheck> out;
  for (int v1 = 1; v1 <= v_max; ++v1) {
    for (int v2 = v1; v2 <= v_max; ++v2) {
      for (int v3 = v2; v3 <= v_max; ++v3) {
        for (int u1 = 0; u1 < u_max; ++u1) {
          for (int u2 = u1 + 1; u2 <= u_max; ++u2) {
            for (int u3 = u2 + 1; u3 <= u_max; ++u3) {
              BlockSumCheck c{v1, v2, v3, u1, u2, u3, 0};
              const Matrix a = sum_matrix(lay, block_users(u2, v2));
              const Matrix b = vstack(sum_matrix(lay, block_users(u3, v3)),
                                      input_rows(block_users(u1, v1)));
              c.mi = cond_mutual_info(f, a, b, Matrix(0, lay.cols()));
              out.push_back(c);
            }
          }
        }
      }
    }
  }
  return out;
}

std::string check_line(const SecurityCheck& c) {
  std::ostringstream os;
  os << "kind=" << c.kind << " pattern=" << c.pattern_id << " relay=";
  if (c.relay < 0) {
    os << "-";
  } else {
    os << c.relay + 1;
  }
  os << " colluders=";
  if (c.colluders.empty()) {
    os << "-";
  } else {
    for (size_t i = 0; i < c.colluders.size(); ++i) {
      os << (i ? "," : "") << c.colluders[i];
    }
  }
  os << " mi=" << c.mi << " pass=" << (c.mi == 0 ? "true" : "false");
  if (c.combos > 1) os << " combos=" << c.combos;
  return os.str();
}

void write_security_report(std::ostream& os, const SecuritySweepReport& r) {
  for (const auto& c : r.checks) os << check_line(c) << "\n";
  os << "patterns=" << r.patterns_covered
     << " relay_combos=" << r.relay_combos
     << " server_combos=" << r.server_combos
     << " patterns_exhaustive=" << (r.patterns_exhaustive ? "true" : "false")
     << " colluders_exhaustive=" << (r.colluders_exhaustive ? "true" : "false")
     << " all_zero=" << (r.all_zero ? "true" : "false") << "\n";
}

}  // namespace hsa
