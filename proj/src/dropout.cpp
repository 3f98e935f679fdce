#include "hsa/dropout.hpp"

#include <bit>
#include <sstream>

namespace hsa {

namespace {

int popcount(uint32_t x) { return std::popcount(x); }

// All (v1, v2) mask pairs admissible for one relay, ascending (v1, v2).
// The round-2 floor applies only to relays that survive round 2.
std::vector<std::pair<uint32_t, uint32_t>> cluster_choices(int v, int v0,
                                                           bool in_round2) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  const uint32_t all = (1u << v) - 1;
  for (uint32_t v1 = 0; v1 <= all; ++v1) {
    if (popcount(v1) < v0) continue;
    for (uint32_t v2 = 0; v2 <= all; ++v2) {
      if ((v2 & ~v1) != 0) continue;
      if (in_round2 && popcount(v2) < v0) continue;
      out.emplace_back(v1, v2);
    }
  }
  return out;
}

}  // namespace

std::vector<int> surviving_union(const SystemShape& shape,
                                 const DropoutPattern& p) {
  std::vector<int> out;
  for (int u = 0; u < shape.relays; ++u) {
    if (!(p.round1_relays >> u & 1)) continue;
    for (int v = 0; v < shape.users_per_relay; ++v) {
      if (p.round1_users[u] >> v & 1) out.push_back(u * shape.users_per_relay + v);
    }
  }
  return out;
}

std::vector<std::string> validate_pattern(const SystemShape& shape,
                                          const DropoutPattern& p) {
  std::vector<std::string> bad;
  const uint32_t relay_all = (1u << shape.relays) - 1;
  const uint32_t user_all = (1u << shape.users_per_relay) - 1;
  if (p.round1_relays & ~relay_all) bad.push_back("U1 has bits beyond relay count");
  if (p.round2_relays & ~p.round1_relays) bad.push_back("U2 not nested in U1");
  if (popcount(p.round1_relays & relay_all) < shape.relay_floor) {
    bad.push_back("|U1| below relay floor");
  }
  if (popcount(p.round2_relays & relay_all) < shape.relay_floor) {
    bad.push_back("|U2| below relay floor");
  }
  if (static_cast<int>(p.round1_users.size()) != shape.relays ||
      static_cast<int>(p.round2_users.size()) != shape.relays) {
    bad.push_back("per-relay mask lists must have one entry per relay");
    return bad;
  }
  for (int u = 0; u < shape.relays; ++u) {
    const std::string tag = " (relay " + std::to_string(u + 1) + ")";
    if (p.round1_users[u] & ~user_all) bad.push_back("V1 has bits beyond cluster size" + tag);
    if (popcount(p.round1_users[u] & user_all) < shape.user_floor) {
      bad.push_back("|V1| below user floor" + tag);
    }
    if (p.round2_users[u] & ~p.round1_users[u]) {
      bad.push_back("round-2 set not nested" + tag);
    }
    if ((p.round2_relays >> u & 1) &&
        popcount(p.round2_users[u] & user_all) < shape.user_floor) {
      bad.push_back("|V2| below user floor" + tag);
    }
  }
  return bad;
}

DropoutPattern full_survival(const SystemShape& shape) {
  DropoutPattern p;
  p.round1_relays = p.round2_relays = (1u << shape.relays) - 1;
  const uint32_t all = (1u << shape.users_per_relay) - 1;
  p.round1_users.assign(shape.relays, all);
  p.round2_users.assign(shape.relays, all);
  return p;
}

uint64_t count_patterns(const SystemShape& shape, uint64_t cap) {
  const auto in2 = cluster_choices(shape.users_per_relay, shape.user_floor, true);
  const auto out2 = cluster_choices(shape.users_per_relay, shape.user_floor, false);
  const uint32_t relay_all = (1u << shape.relays) - 1;
  unsigned __int128 total = 0;
  for (uint32_t u1 = 0; u1 <= relay_all; ++u1) {
    if (popcount(u1) < shape.relay_floor) continue;
    for (uint32_t u2 = 0; u2 <= relay_all; ++u2) {
      if ((u2 & ~u1) || popcount(u2) < shape.relay_floor) continue;
      unsigned __int128 prod = 1;
      for (int u = 0; u < shape.relays; ++u) {
        prod *= (u2 >> u & 1) ? in2.size() : out2.size();
        if (prod > cap) break;
      }
      total += prod;
      if (total > cap) return cap + 1;
    }
  }
  return static_cast<uint64_t>(total);
}

void enumerate_patterns(const SystemShape& shape,
                        const std::function<bool(const DropoutPattern&)>& visit,
                        uint64_t cap) {
  if (count_patterns(shape, cap) > cap) {
    throw EnumerationTooLarge(
        "admissible pattern count exceeds cap " + std::to_string(cap) +
        "; use sampling instead");
  }
  const auto in2 = cluster_choices(shape.users_per_relay, shape.user_floor, true);
  const auto out2 = cluster_choices(shape.users_per_relay, shape.user_floor, false);
  const uint32_t relay_all = (1u << shape.relays) - 1;
  DropoutPattern p;
  p.round1_users.resize(shape.relays);
  p.round2_users.resize(shape.relays);
  for (uint32_t u1 = 0; u1 <= relay_all; ++u1) {
    if (popcount(u1) < shape.relay_floor) continue;
    for (uint32_t u2 = 0; u2 <= relay_all; ++u2) {
      if ((u2 & ~u1) || popcount(u2) < shape.relay_floor) continue;
      p.round1_relays = u1;
      p.round2_relays = u2;
      // Odometer over per-relay choices, last relay fastest.
      std::vector<size_t> idx(shape.relays, 0);
      while (true) {
        for (int u = 0; u < shape.relays; ++u) {
          const auto& list = (u2 >> u & 1) ? in2 : out2;
          p.round1_users[u] = list[idx[u]].first;
          p.round2_users[u] = list[idx[u]].second;
        }
        if (!visit(p)) return;
        int u = shape.relays - 1;
        while (u >= 0) {
          const auto& list = (u2 >> u & 1) ? in2 : out2;
          if (++idx[u] < list.size()) break;
          idx[u] = 0;
          --u;
        }
        if (u < 0) break;
      }
    }
  }
}

DropoutPattern sample_pattern(const SystemShape& shape, Rng& rng) {
  const uint32_t relay_all = (1u << shape.relays) - 1;
  const uint32_t user_all = (1u << shape.users_per_relay) - 1;
  DropoutPattern p;
  do {
    p.round1_relays = rng.below(relay_all + 1);
  } while (popcount(p.round1_relays) < shape.relay_floor);
  do {
    p.round2_relays = rng.below(relay_all + 1) & p.round1_relays;
  } while (popcount(p.round2_relays) < shape.relay_floor);
  p.round1_users.resize(shape.relays);
  p.round2_users.resize(shape.relays);
  for (int u = 0; u < shape.relays; ++u) {
    do {
      p.round1_users[u] = rng.below(user_all + 1);
    } while (popcount(p.round1_users[u]) < shape.user_floor);
    const bool in2 = p.round2_relays >> u & 1;
    do {
      p.round2_users[u] = rng.below(user_all + 1) & p.round1_users[u];
    } while (in2 && popcount(p.round2_users[u]) < shape.user_floor);
  }
  return p;
}

std::string pattern_line(const DropoutPattern& p) {
  std::ostringstream os;
  os << "U1=" << p.round1_relays << " U2=" << p.round2_relays << " V1=";
  for (size_t u = 0; u < p.round1_users.size(); ++u) {
    os << (u ? "," : "") << p.round1_users[u];
  }
  os << " V2=";
  for (size_t u = 0; u < p.round2_users.size(); ++u) {
    os << (u ? "," : "") << p.round2_users[u];
  }
  return os.str();
}

namespace {

std::vector<uint32_t> parse_mask_list(const std::string& s) {
  std::vector<uint32_t> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    out.push_back(static_cast<uint32_t>(std::stoul(item)));
  }
  return out;
}

}  // namespace

DropoutPattern parse_pattern_line(const SystemShape& shape,
                                  const std::string& line) {
  DropoutPattern p;
  std::istringstream is(line);
  std::string tok;
  bool got_u1 = false, got_u2 = false, got_v1 = false, got_v2 = false;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw IoError("bad pattern token: " + tok);
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "U1") { p.round1_relays = std::stoul(val); got_u1 = true; }
    else if (key == "U2") { p.round2_relays = std::stoul(val); got_u2 = true; }
    else if (key == "V1") { p.round1_users = parse_mask_list(val); got_v1 = true; }
    else if (key == "V2") { p.round2_users = parse_mask_list(val); got_v2 = true; }
    else throw IoError("unknown pattern key: " + key);
  }
  if (!(got_u1 && got_u2 && got_v1 && got_v2)) {
    throw IoError("pattern line missing fields");
  }
  auto bad = validate_pattern(shape, p);
  if (!bad.empty()) throw IoError("inadmissible pattern: " + bad.front());
  return p;
}

}  // namespace hsa
