#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "hsa/protocol.hpp"
#include "hsa/rates.hpp"
#include "hsa/security.hpp"

namespace hsa {

/// Flat key=value config. Keys: U V U0 V0 T q seed mode samples
/// colluder_cap policy; unknown keys are rejected.
struct CampaignConfig {
  SystemShape shape;
  bool q_auto = true;
  uint32_t q = 0;
  uint64_t seed = 0;
  bool sample_mode = false;  // mode: exhaustive | sample
  uint64_t samples = 1000;
  uint64_t colluder_cap = 100000;
  SelectionPolicy policy = SelectionPolicy::kLowestIndex;
};

/// Applies one key=value pair; throws ConfigError naming the field on any
/// violation.
void apply_config_entry(CampaignConfig& cfg, const std::string& key,
                        const std::string& value);

/// Parses "key=value" lines; '#' starts a comment.
CampaignConfig parse_config(std::istream& is);
CampaignConfig load_config_file(const std::string& path);

/// Uniform random input vectors, one per user.
std::vector<std::vector<uint32_t>> random_inputs(const SystemParams& params,
                                                 Rng& rng);

struct CampaignResult {
  bool ok = false;
  bool feasible = true;
  uint32_t modulus = 0;
  uint64_t sessions = 0;
  uint64_t decode_failures = 0;
  uint64_t security_checks = 0;
  bool security_all_zero = false;
  bool key_audit_pass = false;
  bool rates_ok = false;
};

/// Full pipeline: certify a precoding matrix, deal keys, run decode-checked
/// sessions over the dropout space, sweep the security checks, compare
/// rates. Writes summary.txt, sessions.txt and security.txt under out_dir;
/// identical config+seed yields byte-identical files. `log` receives
/// progress lines (not part of the report).
CampaignResult run_campaign(const CampaignConfig& cfg, const std::string& out_dir,
                            std::ostream& log, ExecMode exec = ExecMode::kParallel);

}  // namespace hsa
