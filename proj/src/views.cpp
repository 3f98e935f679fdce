#include "hsa/views.hpp"

#include <algorithm>
#include <bit>

namespace hsa {

std::vector<uint32_t> share_functional(const SecretLayout& lay,
                                       const MdsMatrix& alpha, int user,
                                       const std::vector<int>& s1) {
  const PrimeField f(alpha.modulus);
  std::vector<uint32_t> row(lay.cols(), 0);
  const int c = alpha.column_of(user);
  for (int src : s1) {
    for (int r = 0; r < lay.input_len; ++r) {
      row[lay.mask_col(src, r)] =
          f.add(row[lay.mask_col(src, r)], alpha.alpha.at(r, c));
    }
    for (int r = 0; r < lay.pad_len; ++r) {
      row[lay.pad_col(src, r)] =
          f.add(row[lay.pad_col(src, r)], alpha.alpha.at(lay.input_len + r, c));
    }
  }
  return row;
}

Matrix relay_observed(const SystemParams& params, const MdsMatrix& alpha,
                      const SecretLayout& lay, const std::vector<int>& s1,
                      int relay, bool in_round1, const ViewOptions& opts) {
  Matrix out(0, 0);
  for (int v = 0; v < params.users_per_relay(); ++v) {
    const int user = params.user_id(relay, v);
    for (int i = 0; i < lay.input_len; ++i) {
      std::vector<uint32_t> row(lay.cols(), 0);
      row[lay.input_col(user, i)] = 1;
      if (opts.mask_inputs) row[lay.mask_col(user, i)] = 1;
      out.append_row(row);
    }
  }
  if (in_round1) {
    for (int user : s1) {
      if (params.relay_of(user) != relay) continue;
      out.append_row(share_functional(lay, alpha, user, s1));
    }
  }
  return out;
}

ServerViewKey server_key_for(const SystemParams& params,
                             const DropoutPattern& p,
                             const SessionPolicy& policy) {
  ServerViewKey key;
  key.round1_relays = p.round1_relays;
  key.round1_users = p.round1_users;
  key.selections.assign(params.relays(), std::nullopt);
  for (int u = 0; u < params.relays(); ++u) {
    if (!(p.round1_relays >> u & 1)) continue;
    if (std::popcount(p.round2_users[u]) < params.user_floor()) continue;
    key.selections[u] = relay_selection(params, p.round2_users[u], u, policy);
  }
  return key;
}

Matrix server_observed(const SystemParams& params, const MdsMatrix& alpha,
                       const SecretLayout& lay, const ServerViewKey& key,
                       const ViewOptions& opts) {
  Matrix out(0, 0);
  const std::vector<int> s1 = server_signaling(params.shape(), key.round1_relays,
                                               key.round1_users);
  for (int u = 0; u < params.relays(); ++u) {
    for (int i = 0; i < lay.input_len; ++i) {
      std::vector<uint32_t> row(lay.cols(), 0);
      for (int v = 0; v < params.users_per_relay(); ++v) {
        if (!(key.round1_users[u] >> v & 1)) continue;
        const int user = params.user_id(u, v);
        if (opts.mask_inputs) row[lay.mask_col(user, i)] = 1;
        row[lay.input_col(user, i)] = 1;
      }
      out.append_row(row);
    }
  }
  for (int u = 0; u < params.relays(); ++u) {
    if (!key.selections[u]) continue;
    for (int user : *key.selections[u]) {
      out.append_row(share_functional(lay, alpha, user, s1));
    }
  }
  return out;
}

Matrix inputs_matrix(const SecretLayout& lay) {
  Matrix out(lay.users * lay.input_len, lay.cols());
  for (int user = 0; user < lay.users; ++user) {
    for (int i = 0; i < lay.input_len; ++i) {
      out.at(user * lay.input_len + i, lay.input_col(user, i)) = 1;
    }
  }
  return out;
}

Matrix sum_matrix(const SecretLayout& lay, const std::vector<int>& s1) {
  Matrix out(lay.input_len, lay.cols());
  for (int i = 0; i < lay.input_len; ++i) {
    for (int user : s1) out.at(i, lay.input_col(user, i)) = 1;
  }
  return out;
}

Matrix key_matrix(const SystemParams& params, const MdsMatrix& alpha,
                  const SecretLayout& lay, int user) {
  Matrix out(0, 0);
  for (int i = 0; i < lay.input_len; ++i) {
    std::vector<uint32_t> row(lay.cols(), 0);
    row[lay.mask_col(user, i)] = 1;
    out.append_row(row);
  }
  const int c = alpha.column_of(user);
  for (int src = 0; src < params.total_users(); ++src) {
    std::vector<uint32_t> row(lay.cols(), 0);
    for (int r = 0; r < lay.input_len; ++r) {
      row[lay.mask_col(src, r)] = alpha.alpha.at(r, c);
    }
    for (int r = 0; r < lay.pad_len; ++r) {
      row[lay.pad_col(src, r)] = alpha.alpha.at(lay.input_len + r, c);
    }
    out.append_row(row);
  }
  return out;
}

Matrix colluder_matrix(const SystemParams& params, const MdsMatrix& alpha,
                       const SecretLayout& lay,
                       const std::vector<int>& colluders) {
  Matrix out(0, 0);
  for (int user : colluders) {
    for (int i = 0; i < lay.input_len; ++i) {
      std::vector<uint32_t> row(lay.cols(), 0);
      row[lay.input_col(user, i)] = 1;
      out.append_row(row);
    }
    out = vstack(out, key_matrix(params, alpha, lay, user));
  }
  if (out.empty()) return Matrix(0, lay.cols());
  return out;
}

Matrix colluder_messages(const MdsMatrix& alpha,
                         const SecretLayout& lay, const std::vector<int>& s1,
                         const std::vector<int>& colluders,
                         const ViewOptions& opts) {
  Matrix out(0, lay.cols());
  for (int user : colluders) {
    for (int i = 0; i < lay.input_len; ++i) {
      std::vector<uint32_t> row(lay.cols(), 0);
      row[lay.input_col(user, i)] = 1;
      if (opts.mask_inputs) row[lay.mask_col(user, i)] = 1;
      out.append_row(row);
    }
    if (std::find(s1.begin(), s1.end(), user) != s1.end()) {
      out.append_row(share_functional(lay, alpha, user, s1));
    }
  }
  return out;
}

}  // namespace hsa
