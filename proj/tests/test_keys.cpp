#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "fixtures.hpp"
#include "hsa/keys.hpp"
#include "oracles.hpp"

using namespace hsa;

namespace {

KeyMaterial medium_keys(uint64_t seed) {
  const SystemParams params(fixtures::medium(), fixtures::kMediumModulus);
  const MdsMatrix alpha = find_t_private_mds(fixtures::medium()).matrix;
  return deal_keys(params, seed, alpha);
}

}  // namespace

TEST_CASE("base sampling is seed-deterministic") {
  const SystemParams params(fixtures::medium(), fixtures::kMediumModulus);
  const BaseRandomness a = sample_base(params, 42);
  const BaseRandomness b = sample_base(params, 42);
  const BaseRandomness c = sample_base(params, 43);
  CHECK(a.mask == b.mask);
  CHECK(a.pad == b.pad);
  CHECK(a.mask != c.mask);
  CHECK(a.mask.size() == 9);
  for (const auto& v : a.mask) CHECK(v.size() == 2);
  for (const auto& v : a.pad) CHECK(v.size() == 2);
}

TEST_CASE("no padding vectors without collusion") {
  const SystemParams params(fixtures::tiny(), fixtures::kTinyModulus);
  const BaseRandomness base = sample_base(params, 1);
  for (const auto& v : base.pad) CHECK(v.empty());
  for (const auto& v : base.mask) CHECK(v.size() == 2);
}

TEST_CASE("marginal frequencies are uniform across seeds") {
  const SystemParams params(fixtures::tiny(), fixtures::kTinyModulus);
  const int trials = 10000;
  std::vector<int> hits(params.modulus(), 0);
  for (int seed = 0; seed < trials; ++seed) {
    ++hits[sample_base(params, seed).mask[2][1]];
  }
  // 5-sigma band around 1/q for a binomial marginal.
  const double p = 1.0 / params.modulus();
  const double sigma = std::sqrt(p * (1 - p) * trials);
  for (uint32_t v = 0; v < params.modulus(); ++v) {
    CHECK(std::abs(hits[v] - trials * p) < 5 * sigma);
  }
}

TEST_CASE("derived shares match the worked example for user (1,3)") {
  const KeyMaterial km = medium_keys(7);
  const PrimeField f(fixtures::kMediumModulus);
  // Share of source (i,j) held by (1,3): N(1) + 4 N(2) + 9 S(1) + 16 S(2).
  const int target = 2;  // flat id of (1,3)
  for (int src = 0; src < 9; ++src) {
    uint32_t want = km.base.mask[src][0];
    want = f.add(want, f.mul(4, km.base.mask[src][1]));
    want = f.add(want, f.mul(9, km.base.pad[src][0]));
    want = f.add(want, f.mul(16, km.base.pad[src][1]));
    CHECK(km.share[src][target] == want);
  }
}

TEST_CASE("zero base randomness yields zero shares") {
  const SystemParams params(fixtures::medium(), fixtures::kMediumModulus);
  const MdsMatrix alpha = find_t_private_mds(fixtures::medium()).matrix;
  BaseRandomness zero;
  zero.mask.assign(9, std::vector<uint32_t>(2, 0));
  zero.pad.assign(9, std::vector<uint32_t>(2, 0));
  const KeyMaterial km = derive_keys(params, 0, zero, alpha);
  for (const auto& row : km.share) {
    for (uint32_t s : row) CHECK(s == 0);
  }
}

TEST_CASE("stacked shares equal the transposed matrix product") {
  const KeyMaterial km = medium_keys(11);
  const PrimeField f(fixtures::kMediumModulus);
  const Matrix at = transpose(km.alpha.alpha);
  for (int src = 0; src < 9; ++src) {
    std::vector<uint32_t> base = km.base.mask[src];
    base.insert(base.end(), km.base.pad[src].begin(), km.base.pad[src].end());
    const std::vector<uint32_t> prod = mat_vec(f, at, base);
    CHECK(prod == km.share[src]);
  }
}

TEST_CASE("mismatched precoding matrices are rejected") {
  const SystemParams params(fixtures::medium(), fixtures::kMediumModulus);
  const MdsMatrix tiny_alpha = find_t_private_mds(fixtures::tiny()).matrix;
  CHECK_THROWS_AS(deal_keys(params, 0, tiny_alpha), DimensionMismatch);
}

TEST_CASE("key export carries params, seed, and per-user sections") {
  const KeyMaterial km = medium_keys(9);
  std::stringstream ss;
  write_keys(ss, km);
  const std::string text = ss.str();
  CHECK(text.find("U=3 V=3 U0=2 V0=2 T=2 q=23") != std::string::npos);
  CHECK(text.find("seed=9") != std::string::npos);
  CHECK(text.find("user (1,3)") != std::string::npos);
  CHECK(text.find("N:") != std::string::npos);
  CHECK(text.find("Z:") != std::string::npos);
}
