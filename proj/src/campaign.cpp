#include "hsa/campaign.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hsa/mds.hpp"

namespace hsa {

void apply_config_entry(CampaignConfig& cfg, const std::string& key,
                        const std::string& value) {
  auto as_int = [&](long long lo, long long hi) {
    long long v;
    try {
      v = std::stoll(value);
    } catch (const std::exception&) {
      throw ConfigError("field '" + key + "': not a number: " + value);
    }
    if (v < lo || v > hi) {
      throw ConfigError("field '" + key + "': out of range: " + value);
    }
    return v;
  };
  if (key == "U") cfg.shape.relays = static_cast<int>(as_int(0, 1 << 20));
  else if (key == "V") cfg.shape.users_per_relay = static_cast<int>(as_int(0, 1 << 20));
  else if (key == "U0") cfg.shape.relay_floor = static_cast<int>(as_int(0, 1 << 20));
  else if (key == "V0") cfg.shape.user_floor = static_cast<int>(as_int(0, 1 << 20));
  else if (key == "T") cfg.shape.colluders_max = static_cast<int>(as_int(0, 1 << 20));
  else if (key == "q") {
    if (value == "auto") {
      cfg.q_auto = true;
    } else {
      cfg.q_auto = false;
      cfg.q = static_cast<uint32_t>(as_int(2, (1ll << 31) - 1));
    }
  } else if (key == "seed") {
    cfg.seed = static_cast<uint64_t>(as_int(0, INT64_MAX));
  } else if (key == "mode") {
    if (value == "exhaustive") cfg.sample_mode = false;
    else if (value == "sample") cfg.sample_mode = true;
    else throw ConfigError("field 'mode': expected exhaustive|sample, got " + value);
  } else if (key == "samples") {
    cfg.samples = static_cast<uint64_t>(as_int(1, INT64_MAX));
  } else if (key == "colluder_cap") {
    cfg.colluder_cap = static_cast<uint64_t>(as_int(1, INT64_MAX));
  } else if (key == "policy") {
    if (value == "lowest") cfg.policy = SelectionPolicy::kLowestIndex;
    else if (value == "random") cfg.policy = SelectionPolicy::kSeededRandom;
    else throw ConfigError("field 'policy': expected lowest|random, got " + value);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

CampaignConfig parse_config(std::istream& is) {
  CampaignConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key=value, got: " + line);
    }
    auto strip = [](std::string s) {
      const auto sb = s.find_first_not_of(" \t");
      const auto se = s.find_last_not_of(" \t");
      return sb == std::string::npos ? std::string() : s.substr(sb, se - sb + 1);
    };
    apply_config_entry(cfg, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
  }
  return cfg;
}

CampaignConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  return parse_config(is);
}

std::vector<std::vector<uint32_t>> random_inputs(const SystemParams& params,
                                                 Rng& rng) {
  const PrimeField f(params.modulus());
  std::vector<std::vector<uint32_t>> w(params.total_users());
  for (auto& v : w) {
    v.resize(params.input_len());
    for (auto& x : v) x = rng.field_element(f);
  }
  return w;
}

namespace {

struct SessionOutcome {
  DropoutPattern pattern;
  bool decode_ok = false;
  bool surplus_ok = false;
};

SessionOutcome run_one(const KeyMaterial& km, const DropoutPattern& pattern,
                       uint64_t seed, uint64_t index, SelectionPolicy policy) {
  const SystemParams& params = km.params;
  const PrimeField f(params.modulus());
  Rng wrng = Rng(seed).stream(0x770000 + index);
  const auto inputs = random_inputs(params, wrng);
  SessionPolicy pol{policy, seed + index};
  Transcript t = run_session(km, inputs, pattern, pol);
  t.seed = seed;

  std::vector<uint32_t> expect(params.input_len(), 0);
  for (int user : t.surviving) {
    for (int i = 0; i < params.input_len(); ++i) {
      expect[i] = f.add(expect[i], inputs[user][i]);
    }
  }
  SessionOutcome out;
  out.pattern = pattern;
  out.decode_ok = t.decoded == expect;
  out.surplus_ok = t.surplus_consistent;
  return out;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& cfg, const std::string& out_dir,
                            std::ostream& log, ExecMode exec) {
  CampaignResult res;
  const RateRegion region = rate_region(cfg.shape);
  if (!region.feasible) {
    res.feasible = false;
    log << "refused: infeasible parameters (U0*V0 <= T yields an empty rate "
           "region; secure aggregation requires U0*V0 > T)\n";
    return res;
  }

  std::filesystem::create_directories(out_dir);
  std::ofstream summary(out_dir + "/summary.txt");
  std::ofstream sessions_out(out_dir + "/sessions.txt");
  std::ofstream security_out(out_dir + "/security.txt");
  if (!summary || !sessions_out || !security_out) {
    throw IoError("cannot write report files under " + out_dir);
  }

  MdsSearchOptions mds_opts;
  mds_opts.seed = cfg.seed;
  mds_opts.exec = exec;
  const MdsSearchResult mds =
      cfg.q_auto ? find_t_private_mds(cfg.shape, mds_opts)
                 : find_mds_at(cfg.shape, cfg.q, mds_opts);
  res.modulus = mds.matrix.modulus;
  log << "certified precoding matrix at q=" << res.modulus << " ("
      << mds.candidates_tried << " candidates)\n";

  const SystemParams params(cfg.shape, res.modulus);
  const KeyMaterial km = deal_keys(params, cfg.seed, mds.matrix);

  // Sessions: one per enumerated pattern, or `samples` sampled ones.
  std::vector<DropoutPattern> patterns;
  if (cfg.sample_mode) {
    Rng prng = Rng(cfg.seed).stream(0x706174);
    for (uint64_t i = 0; i < cfg.samples; ++i) {
      patterns.push_back(sample_pattern(cfg.shape, prng));
    }
  } else {
    enumerate_patterns(cfg.shape, [&](const DropoutPattern& p) {
      patterns.push_back(p);
      return true;
    });
  }
  res.sessions = patterns.size();

  std::vector<SessionOutcome> outcomes(patterns.size());
  const int64_t n = static_cast<int64_t>(patterns.size());
  const bool parallel = exec == ExecMode::kParallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
  for (int64_t i = 0; i < n; ++i) {
    outcomes[i] = run_one(km, patterns[i], cfg.seed, static_cast<uint64_t>(i),
                          cfg.policy);
  }
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.decode_ok || !o.surplus_ok) ++res.decode_failures;
    sessions_out << "session=" << i << " " << pattern_line(o.pattern)
                 << " decode=" << (o.decode_ok ? "ok" : "MISMATCH")
                 << " surplus=" << (o.surplus_ok ? "ok" : "INCONSISTENT")
                 << "\n";
  }
  log << res.sessions << " sessions, " << res.decode_failures
      << " decode failures\n";

  // Security sweep plus the dealer-side key audit.
  SweepOptions sw;
  sw.sample_patterns = cfg.sample_mode;
  sw.samples = cfg.samples;
  sw.seed = cfg.seed;
  sw.colluder_cap = cfg.colluder_cap;
  sw.policy = SessionPolicy{cfg.policy, cfg.seed};
  sw.exec = exec;
  const SecuritySweepReport sweep = sweep_security(params, mds.matrix, sw);
  write_security_report(security_out, sweep);
  res.security_checks = sweep.checks.size();
  res.security_all_zero = sweep.all_zero;

  const KeyAuditReport audit =
      audit_key_privacy(params, mds.matrix, cfg.colluder_cap, cfg.seed, exec);
  res.key_audit_pass = audit.all_pass;
  for (const auto& rec : audit.records) {
    SecurityCheck c;
    c.kind = "tprivacy";
    c.relay = -1;
    c.colluders = rec.colluders;
    c.mi = rec.share_leakage + rec.nonmember_leakage;
    security_out << check_line(c) << "\n";
  }
  log << res.security_checks << " security checks, all_zero="
      << (res.security_all_zero ? "true" : "false") << "\n";

  // Rates: every session transmits the same per-hop symbol counts; measure
  // from a full-survival session.
  Rng wrng = Rng(cfg.seed).stream(0x770000);
  Transcript probe = run_session(km, random_inputs(params, wrng),
                                 full_survival(cfg.shape),
                                 SessionPolicy{cfg.policy, cfg.seed});
  const RateCompareReport rates =
      compare_rates(measured_rates(params, probe), cfg.shape);
  res.rates_ok = rates.achieves_scheme_rates && rates.ry2_meets_upper &&
                 !rates.converse_violated;

  res.ok = res.decode_failures == 0 && res.security_all_zero &&
           res.key_audit_pass && res.rates_ok;

  const auto& s = cfg.shape;
  summary << "U=" << s.relays << " V=" << s.users_per_relay
          << " U0=" << s.relay_floor << " V0=" << s.user_floor
          << " T=" << s.colluders_max << " q=" << res.modulus
          << " seed=" << cfg.seed
          << " mode=" << (cfg.sample_mode ? "sample" : "exhaustive") << "\n";
  summary << "sessions=" << res.sessions
          << " decode_failures=" << res.decode_failures << "\n";
  summary << "security_checks=" << res.security_checks << " relay_combos="
          << sweep.relay_combos << " server_combos=" << sweep.server_combos
          << " all_zero=" << (res.security_all_zero ? "true" : "false")
          << " colluders_exhaustive="
          << (sweep.colluders_exhaustive ? "true" : "false") << "\n";
  summary << "key_audit_sets=" << audit.records.size()
          << " key_audit_pass=" << (res.key_audit_pass ? "true" : "false")
          << "\n";
  write_rate_report(summary, rates);
  summary << "pass=" << (res.ok ? "true" : "false") << "\n";
  return res;
}

}  // namespace hsa
