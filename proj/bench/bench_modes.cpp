// Times the serial reference paths against the OpenMP paths on the two
// heavy kernels: submatrix certification and the security sweep.
#include <chrono>
#include <cstdio>
#include <sstream>

#include "hsa/campaign.hpp"
#include "hsa/mds.hpp"
#include "hsa/security.hpp"

using namespace hsa;

namespace {

template <typename F>
double time_secs(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n", name,
              serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("workers available: %d\n", exec_width());

  // Certification sweep: 12 choose 6 = 924 column subsets of 6x6 ranks.
  {
    const SystemShape shape{4, 3, 3, 2, 2};
    const MdsSearchResult found = find_t_private_mds(shape);
    bool sink = true;
    const double serial = time_secs([&] {
      for (int rep = 0; rep < 200; ++rep) {
        sink &= certify_mds(found.matrix, ExecMode::kSerial);
      }
    });
    const double parallel = time_secs([&] {
      for (int rep = 0; rep < 200; ++rep) {
        sink &= certify_mds(found.matrix, ExecMode::kParallel);
      }
    });
    report("certify 6x12 (200 reps)", serial, parallel);
    if (!sink) std::printf("unexpected certification failure\n");
  }

  // Security sweep at 3x3 with one colluder (leak-free band), sampled
  // pattern set, full colluder exhaustion.
  {
    const SystemShape shape{3, 3, 2, 2, 1};
    const MdsSearchResult found = find_t_private_mds(shape);
    const SystemParams params(shape, found.matrix.modulus);
    SweepOptions opts;
    opts.sample_patterns = true;
    opts.samples = 400;
    opts.seed = 1;
    bool sink = true;
    opts.exec = ExecMode::kSerial;
    const double serial = time_secs(
        [&] { sink &= sweep_security(params, found.matrix, opts).all_zero; });
    opts.exec = ExecMode::kParallel;
    const double parallel = time_secs(
        [&] { sink &= sweep_security(params, found.matrix, opts).all_zero; });
    report("security sweep (400 pat)", serial, parallel);
    if (!sink) std::printf("unexpected leakage at T=1\n");
  }

  // Decode-checked sessions across the full 3x3 pattern space.
  {
    CampaignConfig cfg;
    cfg.shape = {3, 3, 2, 2, 2};
    cfg.seed = 9;
    std::ostringstream sink_log;
    const double serial = time_secs([&] {
      run_campaign(cfg, "/tmp/hsa_bench_serial", sink_log, ExecMode::kSerial);
    });
    const double parallel = time_secs([&] {
      run_campaign(cfg, "/tmp/hsa_bench_parallel", sink_log, ExecMode::kParallel);
    });
    report("full campaign 3x3", serial, parallel);
  }
  return 0;
}
