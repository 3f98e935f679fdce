#include "hsa/protocol.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

namespace hsa {

std::vector<uint32_t> user_round1(const PrimeField& f,
                                  const std::vector<uint32_t>& input,
                                  const std::vector<uint32_t>& mask) {
  if (input.size() != mask.size()) {
    throw LengthMismatch("input and mask lengths differ");
  }
  std::vector<uint32_t> out(input.size());
  for (size_t i = 0; i < input.size(); ++i) out[i] = f.add(input[i], mask[i]);
  return out;
}

std::vector<uint32_t> relay_round1(
    const PrimeField& f,
    const std::vector<std::optional<std::vector<uint32_t>>>& cluster,
    uint32_t survivors_mask, int input_len) {
  std::vector<uint32_t> acc(input_len, 0);
  for (size_t v = 0; v < cluster.size(); ++v) {
    if (!(survivors_mask >> v & 1)) continue;
    if (!cluster[v].has_value()) {
      throw MissingMessage("no round-1 message from surviving slot " +
                           std::to_string(v + 1));
    }
    const auto& msg = *cluster[v];
    if (msg.size() != static_cast<size_t>(input_len)) {
      throw LengthMismatch("round-1 message has wrong length");
    }
    for (int i = 0; i < input_len; ++i) acc[i] = f.add(acc[i], msg[i]);
  }
  return acc;
}

std::vector<int> server_signaling(const SystemShape& shape, uint32_t relays_mask,
                                  const std::vector<uint32_t>& user_masks) {
  DropoutPattern p;
  p.round1_relays = relays_mask;
  p.round1_users = user_masks;
  return surviving_union(shape, p);
}

uint32_t user_round2(const KeyMaterial& km, int user,
                     const std::vector<int>& s1) {
  if (std::find(s1.begin(), s1.end(), user) == s1.end()) {
    throw NotSurviving("user " + km.params.user_label(user) +
                       " is not in the surviving set");
  }
  const PrimeField f(km.params.modulus());
  uint32_t acc = 0;
  for (int src : s1) acc = f.add(acc, km.share[src][user]);
  return acc;
}

std::vector<int> relay_selection(const SystemParams& params,
                                 uint32_t survivors_mask, int relay,
                                 const SessionPolicy& policy) {
  std::vector<int> alive;
  for (int v = 0; v < params.users_per_relay(); ++v) {
    if (survivors_mask >> v & 1) alive.push_back(v);
  }
  const int want = params.user_floor();
  if (static_cast<int>(alive.size()) < want) {
    throw TooFewSurvivors("relay " + std::to_string(relay + 1) + " has " +
                          std::to_string(alive.size()) +
                          " round-2 survivors, needs " + std::to_string(want));
  }
  std::vector<int> picked;
  if (policy.kind == SelectionPolicy::kLowestIndex) {
    picked.assign(alive.begin(), alive.begin() + want);
  } else {
    Rng rng = Rng(policy.seed).stream(0x716275 + relay);
    for (int i = 0; i < want; ++i) {
      const uint32_t j = i + rng.below(static_cast<uint32_t>(alive.size() - i));
      std::swap(alive[i], alive[j]);
      picked.push_back(alive[i]);
    }
    std::sort(picked.begin(), picked.end());
  }
  std::vector<int> users;
  for (int v : picked) users.push_back(params.user_id(relay, v));
  return users;
}

std::pair<std::vector<int>, std::vector<uint32_t>> relay_round2(
    const SystemParams& params,
    const std::vector<std::optional<uint32_t>>& shares, uint32_t survivors_mask,
    int relay, const SessionPolicy& policy) {
  std::pair<std::vector<int>, std::vector<uint32_t>> out;
  out.first = relay_selection(params, survivors_mask, relay, policy);
  for (int user : out.first) {
    if (!shares[user].has_value()) {
      throw MissingMessage("no round-2 share from user " +
                           params.user_label(user));
    }
    out.second.push_back(*shares[user]);
  }
  return out;
}

DecodeResult server_decode(
    const SystemParams& params, const MdsMatrix& alpha,
    const std::vector<std::vector<uint32_t>>& round1_relay, uint32_t relays_mask,
    const std::vector<std::pair<int, uint32_t>>& coded,
    const std::vector<int>& s1) {
  const PrimeField f(params.modulus());
  const int width = params.decode_width();
  const int len = params.input_len();
  if (static_cast<int>(coded.size()) < width) {
    throw InsufficientSymbols("need " + std::to_string(width) +
                              " coded symbols, got " +
                              std::to_string(coded.size()));
  }
  std::vector<std::pair<int, uint32_t>> ordered = coded;
  std::sort(ordered.begin(), ordered.end());
  for (const auto& [user, sym] : ordered) {
    if (!std::binary_search(s1.begin(), s1.end(), user)) {
      throw InvalidOperand("coded symbol from user outside the surviving set");
    }
  }

  // Solve for the aggregated (mask || pad) vector from the first
  // decode_width shares; the matching columns are independent by the MDS
  // certificate.
  Matrix a(width, width);
  Matrix b(width, 1);
  for (int i = 0; i < width; ++i) {
    for (int r = 0; r < width; ++r) {
      a.at(i, r) = alpha.alpha.at(r, alpha.column_of(ordered[i].first));
    }
    b.at(i, 0) = ordered[i].second;
  }
  const Matrix z = mat_solve(f, a, b);

  DecodeResult res;
  for (size_t i = width; i < ordered.size(); ++i) {
    uint64_t acc = 0;
    for (int r = 0; r < width; ++r) {
      acc += uint64_t(alpha.alpha.at(r, alpha.column_of(ordered[i].first))) *
             z.at(r, 0) % f.q();
    }
    if (f.reduce(acc) != ordered[i].second) res.surplus_consistent = false;
  }

  res.sum.assign(len, 0);
  for (int u = 0; u < params.relays(); ++u) {
    if (!(relays_mask >> u & 1)) continue;
    for (int i = 0; i < len; ++i) {
      res.sum[i] = f.add(res.sum[i], round1_relay[u][i]);
    }
  }
  for (int i = 0; i < len; ++i) res.sum[i] = f.sub(res.sum[i], z.at(i, 0));
  return res;
}

Transcript run_session(const KeyMaterial& km,
                       const std::vector<std::vector<uint32_t>>& inputs,
                       const DropoutPattern& pattern,
                       const SessionPolicy& policy) {
  const SystemParams& params = km.params;
  const PrimeField f(params.modulus());
  auto bad = validate_pattern(params.shape(), pattern);
  if (!bad.empty()) throw InvalidOperand("inadmissible pattern: " + bad.front());
  if (inputs.size() != static_cast<size_t>(params.total_users())) {
    throw LengthMismatch("one input vector per user required");
  }

  Transcript t;
  t.pattern = pattern;
  const int n = params.total_users();
  const int vpr = params.users_per_relay();

  t.round1_user.resize(n);
  for (int i = 0; i < n; ++i) {
    t.round1_user[i] = user_round1(f, inputs[i], km.base.mask[i]);
  }

  t.round1_relay.resize(params.relays());
  for (int u = 0; u < params.relays(); ++u) {
    std::vector<std::optional<std::vector<uint32_t>>> cluster(vpr);
    for (int v = 0; v < vpr; ++v) cluster[v] = t.round1_user[params.user_id(u, v)];
    t.round1_relay[u] =
        relay_round1(f, cluster, pattern.round1_users[u], params.input_len());
  }

  t.surviving =
      server_signaling(params.shape(), pattern.round1_relays, pattern.round1_users);

  t.round2_user.assign(n, std::nullopt);
  for (int user : t.surviving) t.round2_user[user] = user_round2(km, user, t.surviving);

  t.selection.assign(params.relays(), std::nullopt);
  t.round2_relay.assign(params.relays(), std::nullopt);
  std::vector<std::pair<int, uint32_t>> coded_from_round2_survivors;
  for (int u = 0; u < params.relays(); ++u) {
    if (!(pattern.round1_relays >> u & 1)) continue;
    const uint32_t v2 = pattern.round2_users[u];
    if (std::popcount(v2) < params.user_floor()) continue;  // relay stays silent
    auto [sel, syms] = relay_round2(params, t.round2_user, v2, u, policy);
    t.selection[u] = sel;
    t.round2_relay[u] = syms;
    if (pattern.round2_relays >> u & 1) {
      for (size_t i = 0; i < sel.size(); ++i) {
        coded_from_round2_survivors.emplace_back(sel[i], syms[i]);
      }
    }
  }

  DecodeResult dec =
      server_decode(params, km.alpha, t.round1_relay, pattern.round1_relays,
                    coded_from_round2_survivors, t.surviving);
  t.decoded = dec.sum;
  t.surplus_consistent = dec.surplus_consistent;
  return t;
}

void write_transcript(std::ostream& os, const SystemParams& params,
                      const Transcript& t) {
  const auto& s = params.shape();
  os << "U=" << s.relays << " V=" << s.users_per_relay << " U0=" << s.relay_floor
     << " V0=" << s.user_floor << " T=" << s.colluders_max
     << " q=" << params.modulus() << "\n";
  os << "seed=" << t.seed << "\n";
  os << pattern_line(t.pattern) << "\n";
  for (int i = 0; i < params.total_users(); ++i) {
    os << "X1 " << params.user_label(i) << ":";
    for (uint32_t x : t.round1_user[i]) os << " " << x;
    os << "\n";
  }
  for (int u = 0; u < params.relays(); ++u) {
    os << "Y1 (" << u + 1 << "):";
    for (uint32_t x : t.round1_relay[u]) os << " " << x;
    os << "\n";
  }
  os << "S1:";
  for (int user : t.surviving) os << " " << params.user_label(user);
  os << "\n";
  for (int i = 0; i < params.total_users(); ++i) {
    if (!t.round2_user[i]) continue;
    os << "X2 " << params.user_label(i) << ": " << *t.round2_user[i] << "\n";
  }
  for (int u = 0; u < params.relays(); ++u) {
    if (!t.round2_relay[u]) continue;
    os << "Y2 (" << u + 1 << "):";
    const auto& sel = *t.selection[u];
    const auto& syms = *t.round2_relay[u];
    for (size_t i = 0; i < sel.size(); ++i) {
      os << " " << params.user_label(sel[i]) << "=" << syms[i];
    }
    os << "\n";
  }
  os << "decoded:";
  for (uint32_t x : t.decoded) os << " " << x;
  os << "\nsurplus_consistent=" << (t.surplus_consistent ? 1 : 0) << "\n";
}

}  // namespace hsa
