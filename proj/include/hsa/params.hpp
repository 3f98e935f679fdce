#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsa/errors.hpp"

namespace hsa {

/// Raw network/threat parameters before validation. Short config/file keys:
/// U = relays, V = users_per_relay, U0 = relay_floor, V0 = user_floor,
/// T = colluders_max, q = modulus.
struct SystemShape {
  int relays = 0;           // total relays, each serving a disjoint cluster
  int users_per_relay = 0;  // cluster size
  int relay_floor = 0;      // guaranteed surviving relays per round
  int user_floor = 0;       // guaranteed surviving users per cluster
  int colluders_max = 0;    // users that may pool inputs/keys with an adversary

  int total_users() const { return relays * users_per_relay; }
  int decode_width() const { return relay_floor * user_floor; }
  int input_len() const { return decode_width() - colluders_max; }
  bool feasible() const { return decode_width() > colluders_max; }

  /// All violated constraints, empty when the shape is admissible.
  std::vector<std::string> violations() const;

  bool operator==(const SystemShape&) const = default;
};

/// Validated parameter set; construction rejects any inadmissible shape.
/// The input length is pinned to relay_floor*user_floor - colluders_max.
class SystemParams {
 public:
  /// Throws InfeasibleParams when decode_width <= colluders_max (the rate
  /// region is empty in that regime), InvalidOperand for other violations or
  /// a composite modulus.
  SystemParams(const SystemShape& shape, uint32_t modulus);

  const SystemShape& shape() const { return shape_; }
  int relays() const { return shape_.relays; }
  int users_per_relay() const { return shape_.users_per_relay; }
  int relay_floor() const { return shape_.relay_floor; }
  int user_floor() const { return shape_.user_floor; }
  int colluders_max() const { return shape_.colluders_max; }
  int total_users() const { return shape_.total_users(); }
  int decode_width() const { return shape_.decode_width(); }
  int input_len() const { return shape_.input_len(); }
  uint32_t modulus() const { return modulus_; }

  /// Flat user id for (relay, slot), both 0-based; id = relay * V + slot.
  int user_id(int relay, int slot) const {
    return relay * shape_.users_per_relay + slot;
  }
  int relay_of(int user) const { return user / shape_.users_per_relay; }
  int slot_of(int user) const { return user % shape_.users_per_relay; }

  /// 1-based "(u,v)" label used in reports and error messages.
  std::string user_label(int user) const;

  bool operator==(const SystemParams&) const = default;

 private:
  SystemShape shape_;
  uint32_t modulus_;
};

}  // namespace hsa
