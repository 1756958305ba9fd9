#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsk/harness/config.hpp"

namespace nsk::harness {

struct ConvergenceRow {
  int n = 0;
  double error_rho = 0.0;
  double error_m = 0.0;
  /// Order against the previous row.
  std::optional<double> order_rho;
  std::optional<double> order_m;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of -log(error) against log(N).
  double fitted_order_rho = 0.0;
  double fitted_order_m = 0.0;
  double t_end = 0.0;
  double dt = 0.0;

  std::string to_csv() const;
};

/// Manufactured-solution study of the forced reduced system: integrates from
/// the exact state to t_end at every resolution with one shared step size and
/// reports sup-norm errors against the exact state. Needs at least three
/// resolutions and a one-dimensional grid.
ConvergenceTable run_convergence(const RunConfig& cfg, std::vector<int> resolutions);

std::vector<int> parse_resolutions(const std::string& list);

}  // namespace nsk::harness
