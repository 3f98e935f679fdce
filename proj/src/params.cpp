#include "hsa/params.hpp"

#include "hsa/field.hpp"

namespace hsa {

std::vector<std::string> SystemShape::violations() const {
  std::vector<std::string> out;
  if (relays < 2 || relays > 16) out.push_back("relays (U) must be in [2, 16]");
  if (users_per_relay < 1 || users_per_relay > 12) {
    out.push_back("users_per_relay (V) must be in [1, 12]");
  }
  if (relay_floor < 1 || relay_floor > relays) {
    out.push_back("relay_floor (U0) must lie in [1, U]");
  }
  if (user_floor < 1 || user_floor > users_per_relay) {
    out.push_back("user_floor (V0) must lie in [1, V]");
  }
  if (colluders_max < 0) out.push_back("colluders_max (T) must be >= 0");
  if (!out.empty()) return out;
  if (!feasible()) {
    out.push_back(
        "infeasible: U0*V0 <= T leaves an empty rate region; secure "
        "aggregation requires U0*V0 > T");
  }
  return out;
}

SystemParams::SystemParams(const SystemShape& shape, uint32_t modulus)
    : shape_(shape), modulus_(modulus) {
  auto bad = shape.violations();
  if (!bad.empty()) {
    std::string msg = bad.front();
    for (size_t i = 1; i < bad.size(); ++i) msg += "; " + bad[i];
    if (msg.rfind("infeasible", 0) == 0) throw InfeasibleParams(msg);
    throw InvalidOperand(msg);
  }
  if (!is_prime(modulus)) {
    throw InvalidOperand("modulus q must be prime, got " +
                         std::to_string(modulus));
  }
}

std::string SystemParams::user_label(int user) const {
  return "(" + std::to_string(relay_of(user) + 1) + "," +
         std::to_string(slot_of(user) + 1) + ")";
}

}  // namespace hsa
