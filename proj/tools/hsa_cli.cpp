#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hsa/campaign.hpp"
#include "hsa/mds.hpp"
#include "hsa/security.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--config", opts->config_path, "key=value config file");
  static const char* keys[] = {"U",    "V",       "U0",           "V0",
                               "T",    "q",       "seed",         "mode",
                               "samples", "colluder_cap", "policy"};
  for (const char* key : keys) {
    cmd->add_option_function<std::string>(
        "--" + std::string(key),
        [opts, key](const std::string& v) { opts->overrides[key] = v; },
        "override config field " + std::string(key));
  }
}

hsa::CampaignConfig resolve_config(const CommonOpts& opts) {
  hsa::CampaignConfig cfg;
  if (!opts.config_path.empty()) cfg = hsa::load_config_file(opts.config_path);
  for (const auto& [k, v] : opts.overrides) hsa::apply_config_entry(cfg, k, v);
  return cfg;
}

hsa::MdsMatrix resolve_mds(const hsa::CampaignConfig& cfg,
                           const std::string& mds_path, bool trust,
                           std::ostream& log) {
  if (!mds_path.empty()) {
    std::ifstream is(mds_path);
    if (!is) throw hsa::IoError("cannot open matrix file: " + mds_path);
    hsa::MdsMatrix m = hsa::read_mds(is, trust);
    if (m.shape != cfg.shape) {
      throw hsa::ConfigError("matrix file parameters disagree with config");
    }
    log << "loaded precoding matrix at q=" << m.modulus
        << (trust ? " (trusted, certification skipped)\n" : " (re-certified)\n");
    return m;
  }
  hsa::MdsSearchOptions sopts;
  sopts.seed = cfg.seed;
  const hsa::MdsSearchResult found =
      cfg.q_auto ? hsa::find_t_private_mds(cfg.shape, sopts)
                 : hsa::find_mds_at(cfg.shape, cfg.q, sopts);
  log << "certified precoding matrix at q=" << found.matrix.modulus << "\n";
  return found.matrix;
}

int cmd_rates(const CommonOpts& opts) {
  const hsa::CampaignConfig cfg = resolve_config(opts);
  hsa::write_rate_region(std::cout, hsa::rate_region(cfg.shape));
  if (cfg.shape.feasible()) {
    const hsa::RateTuple t = hsa::scheme_rates(cfg.shape);
    std::cout << "scheme rx1=" << t.round1_user.str()
              << " ry1=" << t.round1_relay.str()
              << " rx2=" << t.round2_user.str()
              << " ry2=" << t.round2_relay.str() << "\n";
  }
  return 0;
}

int cmd_find_mds(const CommonOpts& opts, const std::string& export_path) {
  const hsa::CampaignConfig cfg = resolve_config(opts);
  hsa::MdsSearchOptions sopts;
  sopts.seed = cfg.seed;
  const hsa::MdsSearchResult found =
      cfg.q_auto ? hsa::find_t_private_mds(cfg.shape, sopts)
                 : hsa::find_mds_at(cfg.shape, cfg.q, sopts);
  std::cerr << "q=" << found.matrix.modulus << " primes_tried="
            << found.primes_tried << " candidates_tried="
            << found.candidates_tried << "\n";
  if (export_path.empty()) {
    hsa::write_mds(std::cout, found.matrix);
  } else {
    std::ofstream os(export_path);
    if (!os) throw hsa::IoError("cannot write " + export_path);
    hsa::write_mds(os, found.matrix);
    std::cerr << "wrote " << export_path << "\n";
  }
  return 0;
}

int cmd_deal(const CommonOpts& opts, const std::string& mds_path, bool trust,
             const std::string& export_path) {
  const hsa::CampaignConfig cfg = resolve_config(opts);
  const hsa::MdsMatrix m = resolve_mds(cfg, mds_path, trust, std::cerr);
  const hsa::SystemParams params(cfg.shape, m.modulus);
  const hsa::KeyMaterial km = hsa::deal_keys(params, cfg.seed, m);
  if (export_path.empty()) {
    hsa::write_keys(std::cout, km);
  } else {
    std::ofstream os(export_path);
    if (!os) throw hsa::IoError("cannot write " + export_path);
    hsa::write_keys(os, km);
    std::cerr << "wrote " << export_path << "\n";
  }
  return 0;
}

int cmd_simulate(const CommonOpts& opts, const std::string& mds_path, bool trust,
                 const std::string& pattern_str, const std::string& export_path) {
  const hsa::CampaignConfig cfg = resolve_config(opts);
  const hsa::MdsMatrix m = resolve_mds(cfg, mds_path, trust, std::cerr);
  const hsa::SystemParams params(cfg.shape, m.modulus);
  const hsa::KeyMaterial km = hsa::deal_keys(params, cfg.seed, m);

  hsa::DropoutPattern pattern;
  if (pattern_str.empty()) {
    hsa::Rng prng = hsa::Rng(cfg.seed).stream(0x706174);
    pattern = hsa::sample_pattern(cfg.shape, prng);
  } else {
    pattern = hsa::parse_pattern_line(cfg.shape, pattern_str);
  }
  hsa::Rng wrng = hsa::Rng(cfg.seed).stream(0x770000);
  const auto inputs = hsa::random_inputs(params, wrng);
  hsa::Transcript t = hsa::run_session(km, inputs, pattern,
                                       hsa::SessionPolicy{cfg.policy, cfg.seed});
  t.seed = cfg.seed;

  const hsa::PrimeField f(params.modulus());
  std::vector<uint32_t> expect(params.input_len(), 0);
  for (int user : t.surviving) {
    for (int i = 0; i < params.input_len(); ++i) {
      expect[i] = f.add(expect[i], inputs[user][i]);
    }
  }
  const bool ok = t.decoded == expect && t.surplus_consistent;

  if (export_path.empty()) {
    hsa::write_transcript(std::cout, params, t);
  } else {
    std::ofstream os(export_path);
    if (!os) throw hsa::IoError("cannot write " + export_path);
    hsa::write_transcript(os, params, t);
    std::cerr << "wrote " << export_path << "\n";
  }
  std::cerr << "decode " << (ok ? "ok" : "MISMATCH") << "\n";
  return ok ? 0 : 1;
}

int cmd_verify_security(const CommonOpts& opts, const std::string& mds_path,
                        bool trust) {
  const hsa::CampaignConfig cfg = resolve_config(opts);
  const hsa::MdsMatrix m = resolve_mds(cfg, mds_path, trust, std::cerr);
  const hsa::SystemParams params(cfg.shape, m.modulus);

  hsa::SweepOptions sw;
  sw.sample_patterns = cfg.sample_mode;
  sw.samples = cfg.samples;
  sw.seed = cfg.seed;
  sw.colluder_cap = cfg.colluder_cap;
  sw.policy = hsa::SessionPolicy{cfg.policy, cfg.seed};
  const hsa::SecuritySweepReport report = hsa::sweep_security(params, m, sw);
  hsa::write_security_report(std::cout, report);

  const hsa::KeyAuditReport audit =
      hsa::audit_key_privacy(params, m, cfg.colluder_cap, cfg.seed);
  bool audit_zero = true;
  for (const auto& rec : audit.records) {
    hsa::SecurityCheck c;
    c.kind = "tprivacy";
    c.colluders = rec.colluders;
    c.mi = rec.share_leakage + rec.nonmember_leakage;
    std::cout << hsa::check_line(c) << "\n";
    audit_zero = audit_zero && rec.pass;
  }
  bool lemma_zero = true;
  for (const auto& c : hsa::check_block_sum_independence(params)) {
    hsa::SecurityCheck line;
    line.kind = "lemma2";
    line.mi = c.mi;
    std::cout << hsa::check_line(line) << "\n";
    lemma_zero = lemma_zero && c.mi == 0;
  }
  return report.all_zero && audit_zero && lemma_zero ? 0 : 1;
}

int cmd_campaign(const CommonOpts& opts, const std::string& out_dir) {
  const hsa::CampaignConfig cfg = resolve_config(opts);
  const hsa::CampaignResult res =
      hsa::run_campaign(cfg, out_dir, std::cerr);
  if (!res.feasible) return 2;
  std::cerr << "campaign " << (res.ok ? "passed" : "FAILED") << "; reports in "
            << out_dir << "\n";
  return res.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-round hierarchical secure aggregation over a prime field"};
  app.require_subcommand(1);

  CommonOpts rates_opts;
  add_common(app.add_subcommand("rates", "print the rate region for a shape"),
             &rates_opts);

  CommonOpts find_opts;
  std::string find_export;
  auto* find = app.add_subcommand("find-mds", "search for a certified precoding matrix");
  add_common(find, &find_opts);
  find->add_option("--export", find_export, "write the matrix to a file");

  CommonOpts deal_opts;
  std::string deal_mds, deal_export;
  bool deal_trust = false;
  auto* deal = app.add_subcommand("deal", "sample base randomness and derive user keys");
  add_common(deal, &deal_opts);
  deal->add_option("--mds", deal_mds, "load the precoding matrix from a file");
  deal->add_flag("--trust", deal_trust, "skip certification on import");
  deal->add_option("--export", deal_export, "write key material to a file");

  CommonOpts sim_opts;
  std::string sim_mds, sim_pattern, sim_export;
  bool sim_trust = false;
  auto* sim = app.add_subcommand("simulate", "run one session and print the transcript");
  add_common(sim, &sim_opts);
  sim->add_option("--mds", sim_mds, "load the precoding matrix from a file");
  sim->add_flag("--trust", sim_trust, "skip certification on import");
  sim->add_option("--pattern", sim_pattern,
                  "dropout pattern line (default: sampled from seed)");
  sim->add_option("--export", sim_export, "write the transcript to a file");

  CommonOpts ver_opts;
  std::string ver_mds;
  bool ver_trust = false;
  auto* ver = app.add_subcommand(
      "verify-security", "exhaustive/sampled leakage checks; nonzero exit on leakage");
  add_common(ver, &ver_opts);
  ver->add_option("--mds", ver_mds, "load the precoding matrix from a file");
  ver->add_flag("--trust", ver_trust, "skip certification on import");

  CommonOpts camp_opts;
  std::string camp_out = "reports";
  auto* camp = app.add_subcommand("campaign", "full correctness+security+rates pipeline");
  add_common(camp, &camp_opts);
  camp->add_option("--out", camp_out, "report directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("rates")) return cmd_rates(rates_opts);
    if (app.got_subcommand("find-mds")) return cmd_find_mds(find_opts, find_export);
    if (app.got_subcommand("deal")) {
      return cmd_deal(deal_opts, deal_mds, deal_trust, deal_export);
    }
    if (app.got_subcommand("simulate")) {
      return cmd_simulate(sim_opts, sim_mds, sim_trust, sim_pattern, sim_export);
    }
    if (app.got_subcommand("verify-security")) {
      return cmd_verify_security(ver_opts, ver_mds, ver_trust);
    }
    if (app.got_subcommand("campaign")) return cmd_campaign(camp_opts, camp_out);
  } catch (const hsa::InfeasibleParams& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const hsa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
