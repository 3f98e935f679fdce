#include "hsa/keys.hpp"

#include <ostream>

namespace hsa {

BaseRandomness sample_base(const SystemParams& params, uint64_t seed) {
  const PrimeField f(params.modulus());
  Rng rng = Rng(seed).stream(0x6b657973);  // dealer stream, disjoint from inputs
  BaseRandomness out;
  const int n = params.total_users();
  out.mask.resize(n);
  out.pad.resize(n);
  for (int i = 0; i < n; ++i) {
    out.mask[i].resize(params.input_len());
    for (auto& x : out.mask[i]) x = rng.field_element(f);
    out.pad[i].resize(params.colluders_max());
    for (auto& x : out.pad[i]) x = rng.field_element(f);
  }
  return out;
}

KeyMaterial derive_keys(const SystemParams& params, uint64_t seed,
                        const BaseRandomness& base, const MdsMatrix& alpha) {
  if (alpha.shape != params.shape() || alpha.modulus != params.modulus()) {
    throw DimensionMismatch("precoding matrix does not match system params");
  }
  if (alpha.alpha.rows() != static_cast<size_t>(params.decode_width()) ||
      alpha.alpha.cols() != static_cast<size_t>(params.total_users())) {
    throw DimensionMismatch("precoding matrix has wrong dimensions");
  }
  const PrimeField f(params.modulus());
  const int n = params.total_users();
  const int len = params.input_len();
  const int t = params.colluders_max();
  KeyMaterial km{params, seed, base, {}, alpha};
  km.share.assign(n, std::vector<uint32_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < n; ++c) {
      uint64_t acc = 0;
      for (int r = 0; r < len; ++r) {
        acc += uint64_t(base.mask[i][r]) * alpha.alpha.at(r, c) % f.q();
      }
      for (int r = 0; r < t; ++r) {
        acc += uint64_t(base.pad[i][r]) * alpha.alpha.at(len + r, c) % f.q();
      }
      km.share[i][c] = f.reduce(acc);
    }
  }
  return km;
}

KeyMaterial deal_keys(const SystemParams& params, uint64_t seed,
                      const MdsMatrix& alpha) {
  return derive_keys(params, seed, sample_base(params, seed), alpha);
}

void write_keys(std::ostream& os, const KeyMaterial& km) {
  const auto& s = km.params.shape();
  os << "U=" << s.relays << " V=" << s.users_per_relay
     << " U0=" << s.relay_floor << " V0=" << s.user_floor
     << " T=" << s.colluders_max << " q=" << km.params.modulus() << "\n";
  os << "seed=" << km.seed << "\n";
  const int n = km.params.total_users();
  for (int i = 0; i < n; ++i) {
    os << "user " << km.params.user_label(i) << "\n";
    os << "  N:";
    for (uint32_t x : km.base.mask[i]) os << " " << x;
    os << "\n  S:";
    for (uint32_t x : km.base.pad[i]) os << " " << x;
    os << "\n  Z:";
    for (int src = 0; src < n; ++src) os << " " << km.share[src][i];
    os << "\n";
  }
}

}  // namespace hsa
