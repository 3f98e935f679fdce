#pragma once

namespace hsa {

/// Every sweep kernel has a serial reference path and an OpenMP path that
/// must produce identical results; tests compare them, the benchmark times
/// them.
enum class ExecMode { kSerial, kParallel };

/// Worker count the parallel path would use (1 when OpenMP is unavailable).
int exec_width();

}  // namespace hsa
