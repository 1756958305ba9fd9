#pragma once

#include <vector>

#include "json.hpp"
#include "nsk/harness/config.hpp"

namespace nsk::harness {

struct DivergencePoint {
  long step = 0;
  double t = 0.0;
  double rho_distance = 0.0;
  double momentum_distance = 0.0;
};

struct CompareReport {
  /// sup |K_A - K_B| over every tensor component at t = 0.
  double korteweg_difference = 0.0;
  bool korteweg_identical = false;
  /// sup |rhs_A - rhs_B| at t = 0.
  double first_rhs_difference = 0.0;
  /// sup |div u| at t = 0.
  double initial_divergence = 0.0;
  std::vector<DivergencePoint> curve;

  nlohmann::json to_json() const;
};

/// Runs an NSK1 and an NSK2 configuration side by side from the same initial
/// state with a shared step size. The configurations must agree on grid,
/// scheme, parameters and initial condition.
CompareReport run_compare(const RunConfig& nsk1_cfg, const RunConfig& nsk2_cfg);

}  // namespace nsk::harness
