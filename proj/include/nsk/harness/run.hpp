#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "nsk/harness/config.hpp"

namespace nsk::harness {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumeric = 3, kExitCheck = 4 };

struct RunOutcome {
  int exit_code = kExitOk;
  long steps = 0;
  double t_final = 0.0;
  std::optional<MixtureState> final_state;
  std::string message;
};

/// Integrates `cfg` and writes into `out_dir`:
///   config.json          resolved configuration
///   metrics.jsonl        one record per metrics_every steps
///   residuals.jsonl      reduction gap and phase residual at snapshot times
///   rho_<step>.csv, m<k>_<step>.csv   snapshots every snapshot_every steps and at the end
///   failure.json         on a numeric abort, next to a diagnostic snapshot
/// Config errors propagate as exceptions; numeric aborts are reported through
/// the outcome (exit code 3).
RunOutcome run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace nsk::harness
